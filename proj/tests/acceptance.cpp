// One line per acceptance criterion. Exits 0 when the failing set is exactly
// the documented known-red set; --strict exits 1 on any failure.
#include "fq/cli.hpp"
#include "fq/covers.hpp"
#include "fq/fixedpoints.hpp"
#include "fq/quatalg.hpp"
#include "fq/quotient.hpp"
#include "fq/registry.hpp"
#include "fq/singres.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace fq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    else detail += "; " + what;
    pass = false;
  }
};

// red for reasons recorded in the README; see "Known deviations"
const std::set<int> kKnownRed{6, 7};

PrimeSplit sp(long long d, long long p) { return split_type(make_field(d), p); }
PrimeSplit gen(long long d, const char* pi) {
  auto k = make_field(d);
  return prime_of_generator(k, parse_element(k, pi));
}
QuaternionData alg(long long d, std::vector<PrimeSplit> primes) { return make_algebra(make_field(d), std::move(primes)); }

std::set<std::string> names(const std::vector<SingularConfiguration>& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(c.to_string());
  return out;
}

std::set<std::string> names(std::initializer_list<const char*> cs) {
  std::set<std::string> out;
  for (const char* c : cs) out.insert(parse_configuration(c).to_string());
  return out;
}

Outcome shimizu() {
  Outcome o;
  struct Case {
    QuaternionData B;
    Rational c2;
  };
  std::vector<Case> cases{{alg(2, {sp(2, 3), sp(2, 7)}), 8},
                          {alg(2, {sp(2, 2), sp(2, 5)}), 4},
                          {alg(5, {sp(5, 2), sp(5, 5)}), make_rational(4, 5)},
                          {alg(5, {sp(5, 2), gen(5, "4+sqrt5")}), 2},
                          {alg(2, {sp(2, 2), sp(2, 3)}), make_rational(4, 3)}};
  for (const auto& c : cases) {
    Rational e = shimizu_euler(c.B);
    o.require(e == c.c2, c.B.name() + " gives " + to_string(e));
  }
  if (o.pass) o.detail = "8, 4, 4/5, 2, 4/3";
  return o;
}

Outcome indices() {
  Outcome o;
  o.require(gamma1_quotient_order(4, 2) == 5, "q=4");
  o.require(gamma1_quotient_order(11, 11) == 6, "q=11");
  o.require(gamma1_quotient_order(2, 2) == 3, "q=2");
  o.require(gamma1_quotient_order(7, 7) == 4, "q=7");
  int n = 0;
  for (const auto& r : default_registry().examples) {
    auto rep = replay(r);
    for (const auto& c : rep.checks)
      if (c.field == "c2") o.require(c.actual == "4", r.id + " has c2 " + c.actual), ++n;
  }
  o.require(n == 8, "expected 8 records");
  if (o.pass) o.detail = "5, 6, 3, 4; c2 = 4 for 8/8 records";
  return o;
}

Outcome riehm() {
  Outcome o;
  int count = 0;
  for (long long q = 2; q <= 64; ++q) {
    if (!prime_power(q)) continue;
    auto k = norm_kernel_by_enumeration(q);
    o.require(k.order == q + 1 && k.cyclic, "q=" + std::to_string(q));
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " prime powers, kernel cyclic of order q+1";
  return o;
}

Outcome torsion() {
  Outcome o;
  auto only = [&](const QuaternionData& B, std::set<int> want) {
    for (int m = 2; m <= 6; ++m)
      o.require(torsion_order_exists(B, m) == (want.count(m) > 0), B.name() + " m=" + std::to_string(m));
  };
  only(alg(5, {sp(5, 2), sp(5, 5)}), {5});
  only(alg(5, {sp(5, 2), gen(5, "4+sqrt5")}), {2});
  auto b45 = alg(2, {sp(2, 2), sp(2, 3)});
  o.require(torsion_order_exists(b45, 3) && !torsion_order_exists(b45, 2), b45.name());
  o.require(torsion_order_exists(alg(2, {sp(2, 2), gen(2, "3+sqrt2")}), 4), "order 4");
  o.require(torsion_order_exists(alg(3, {sp(3, 2), sp(3, 3)}), 6), "order 6");
  if (o.pass) o.detail = "5 only; 2 only; 3 not 2; 4; 6";
  return o;
}

Outcome automorphisms() {
  Outcome o;
  std::set<std::string> resolved;
  int unresolved = 0;
  for (const auto& r : default_registry().examples) {
    auto rep = replay(r);
    o.require(rep.pass(), r.id + " replay fails");
    if (rep.aut.resolved) {
      resolved.insert(rep.aut.name());
    } else {
      ++unresolved;
      o.require(rep.aut.order() == 24 && rep.aut.cyclic_subgroup == 12, "extension record");
    }
  }
  std::set<std::string> want;
  for (const auto& g : {GroupDescriptor::cyclic(2), GroupDescriptor::klein_four(), GroupDescriptor::dihedral(4),
                        GroupDescriptor::dihedral(6), GroupDescriptor::dihedral(8), GroupDescriptor::dihedral(10)})
    want.insert(g.name());
  o.require(resolved == want, "resolved groups differ");
  o.require(unresolved == 1, "one unresolved record expected");
  if (o.pass) o.detail = "Z/2Z, (Z/2Z)^2, D4, D6, D8, D10 + order 24 extension containing Z/12Z";
  return o;
}

Outcome theorem_b() {
  Outcome o;
  std::ostringstream out, err;
  int code = cli::run({"repro", "theorem-b"}, out, err);
  o.require(code == 0, "repro theorem-b exit " + std::to_string(code));
  const auto& recorded = default_registry().theorem_b;
  auto rows = theorem_b_table(recorded);
  std::string ambiguous;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    o.require(r.invariants.k2 == recorded[i].k2 && r.invariants.c2 == recorded[i].c2 &&
                  r.scenario.config == recorded[i].config,
              r.group.name() + " row differs");
    if (!r.unique) ambiguous += (ambiguous.empty() ? "" : ", ") + r.group.name() + " (" +
                                std::to_string(r.survivors.size()) + " survivors)";
  }
  if (!ambiguous.empty()) {
    o.pass = false;
    o.detail = "rows match only with the recorded tie-break; not determined: " + ambiguous;
  } else if (o.pass) {
    o.detail = "8/8 rows determined and equal";
  }
  return o;
}

Outcome enumerator() {
  Outcome o;
  std::map<int, std::set<std::string>> expected{
      {2, names({"4A1"})},
      {3, names({"2A_{3,1} + 2A_{3,2}"})},
      {4, names({"2A_{4,1} + 2A_{4,3}", "A1 + 2A_{4,3}"})},
      {5, names({"4A_{5,2}", "A_{5,1} + 2A_{5,2} + A_{5,4}", "2A_{5,1} + 2A_{5,4}"})},
      {6, names({"2A_{6,1} + 2A_{6,5}"})},
      {8, names({"2A_{8,3} + 2A_{8,5}"})},
      {10, names({"4A_{10,3}", "A_{10,1} + 2A_{10,3} + A_{10,9}", "2A_{10,1} + 2A_{10,9}"})},
  };
  for (const auto& [n, want] : expected) {
    auto got = names(enumerate_cyclic(n));
    if (got != want)
      o.require(false, "n=" + std::to_string(n) + " gives " + std::to_string(got.size()) + " configurations, expected " +
                           std::to_string(want.size()));
  }
  auto survivors = noether_filter(candidate_scenarios(GroupDescriptor::cyclic(10)));
  o.require(survivors.size() == 1, "n=10 Noether filter keeps " + std::to_string(survivors.size()));
  if (o.pass) o.detail = "n = 2..6, 8, 10 exact; n=10 filtered to one";
  return o;
}

Outcome zhang() {
  Outcome o;
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    o.require(zhang_coefficient(p, 1) == make_rational(5 - p, 12), "a1 p=" + std::to_string(p));
    o.require(zhang_coefficient(p, 2) == make_rational(11 - p, 24), "a2 p=" + std::to_string(p));
  }
  for (int p : {2, 3, 5, 7}) {
    std::set<std::string> from_zhang;
    for (const auto& r : zhang_solutions(p, 4)) from_zhang.insert(zhang_configuration(p, r).to_string());
    o.require(names(enumerate_cyclic(p)) == from_zhang, "p=" + std::to_string(p) + " enumerations disagree");
  }
  if (o.pass) o.detail = "closed forms for p <= 23; enumerations agree for p = 2, 3, 5, 7";
  return o;
}

Outcome resolution() {
  Outcome o;
  std::vector<std::pair<SingularityType, Rational>> cases{
      {canonical(5, 1), make_rational(-9, 5)},  {canonical(5, 2), make_rational(-2, 5)},
      {canonical(10, 1), make_rational(-32, 5)}, {canonical(10, 3), make_rational(-6, 5)},
      {canonical(8, 3), -1},                     {canonical(8, 5), make_rational(-1, 2)},
      {canonical(6, 1), make_rational(-8, 3)},   {canonical(3, 1), make_rational(-1, 3)}};
  for (int n = 2; n <= 30; ++n) cases.push_back({canonical(n, n - 1), 0});
  for (const auto& [s, want] : cases) o.require(delta_k2(s) == want, s.name() + " gives " + to_string(delta_k2(s)));
  int pairs = 0;
  for (int n = 2; n <= 200; ++n)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      ++pairs;
      auto c = hj_chain(n, q);
      if (continued_fraction_value(c) != Rational(n, q)) o.require(false, "round trip " + std::to_string(n));
      auto dual = hj_chain(n, static_cast<int>(mod_inverse(q, n)));
      std::reverse(dual.selfints.begin(), dual.selfints.end());
      if (dual != c) o.require(false, "duality " + std::to_string(n) + "," + std::to_string(q));
    }
  if (o.pass) o.detail = "delta K^2 values exact; " + std::to_string(pairs) + " pairs round-trip and dualize";
  return o;
}

Outcome covers() {
  Outcome o;
  auto four = weight4_codes(4);
  o.require(four.size() == 1 && four[0].basis == std::vector<std::vector<int>>{{1, 1, 1, 1}}, "k=4");
  auto six = weight4_codes(6);
  KernelCode given{2, 6, {{1, 1, 1, 1, 0, 0}, {0, 0, 1, 1, 1, 1}}};
  o.require(six.size() == 1 && canonical_code(given).basis == six[0].basis, "k=6");
  o.require(weight4_codes(3).empty() && weight4_codes(5).empty(), "k=3,5 not empty");
  auto surface = [](long long k2, long long c2) {
    SurfaceInvariants y;
    y.k2 = k2;
    y.c2 = c2;
    y.chi = Rational(k2 + c2) / 12;
    return y;
  };
  auto a = double_cover_invariants(surface(4, 8), 4, 1);
  auto b = double_cover_invariants(surface(2, 10), 6, 2);
  o.require(a.k2 == 8 && a.chi == 1, "double");
  o.require(b.k2 == 8 && b.chi == 1, "bidouble");
  auto t = triple_cover_reconstruction().result;
  o.require(t.k2 == 8 && t.c2 == 4 && t.chi == 1, "triple pipeline");
  if (o.pass) o.detail = "codes k=4, 6 unique, k=3, 5 empty; (8,1), (8,1); triple (8,4,1)";
  return o;
}

Outcome properties() {
  Outcome o;
  int rows = 0, sums = 0, counts = 0, systems = 0;
  for (const auto& r : theorem_b_table(default_registry().theorem_b)) {
    o.require(r.invariants.k2 + r.invariants.c2 == 12, r.group.name());
    ++rows;
  }
  std::vector<GroupDescriptor> groups{GroupDescriptor::klein_four(), GroupDescriptor::dihedral(4),
                                      GroupDescriptor::dihedral(8)};
  for (int n = 2; n <= 10; ++n) groups.push_back(GroupDescriptor::cyclic(n));
  for (const auto& g : groups)
    for (const auto& s : candidate_scenarios(g)) {
      auto inv = raw_invariants(s);
      o.require(inv.k2 + inv.c2 == 12, g.name() + " " + s.config.to_string());
      ++rows;
    }
  for (int n = 2; n <= 12; ++n)
    for (const auto& c : enumerate_cyclic_raw(n))
      for (int k = 1; k < n; ++k) {
        if (holomorphic_sum(c, k) != CyclotomicNumber(1, n)) o.require(false, "Lefschetz n=" + std::to_string(n));
        int f = c.fixed_count(k);
        if (f != 2 && f != 4) o.require(false, "fixed count n=" + std::to_string(n));
        ++sums;
        ++counts;
      }
  for (int n = 2; n <= 100; ++n)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      auto c = hj_chain(n, q);
      auto a = discrepancies(c);
      for (std::size_t i = 0; i < a.size(); ++i) {
        Rational lhs = -c.selfints[i] * a[i];
        if (i > 0) lhs += a[i - 1];
        if (i + 1 < a.size()) lhs += a[i + 1];
        if (lhs != 2 - c.selfints[i]) o.require(false, "discrepancy " + std::to_string(n) + "," + std::to_string(q));
      }
      ++systems;
    }
  if (o.pass)
    o.detail = std::to_string(rows) + " rows, " + std::to_string(sums) + " Lefschetz sums, " + std::to_string(counts) +
               " fixed counts, " + std::to_string(systems) + " discrepancy systems";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Shimizu instances", shimizu},
      {"congruence indices and c2 = 4", indices},
      {"norm kernel order q + 1", riehm},
      {"torsion screening", torsion},
      {"automorphism groups", automorphisms},
      {"quotient table", theorem_b},
      {"cyclic enumerator exactness", enumerator},
      {"Zhang cross-check", zhang},
      {"resolution calculus", resolution},
      {"covers", covers},
      {"property suite", properties},
  };
  auto start = std::chrono::steady_clock::now();
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << criteria[i].first << ": " << o.detail;
    if (!o.pass && kKnownRed.count(id)) std::cout << " [known]";
    std::cout << "\n";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria pass in " << secs << " s\n";
  if (strict) return failed.empty() ? 0 : 1;
  if (failed != kKnownRed) {
    std::cout << "failing set differs from the known-red set\n";
    return 1;
  }
  return 0;
}
