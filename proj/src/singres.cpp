#include "fq/singres.hpp"

#include "fq/error.hpp"

#include <cctype>
#include <numeric>
#include <regex>

namespace fq {

std::string SingularityType::name() const {
  if (q == n - 1) return "A" + std::to_string(n - 1);
  return "A_{" + std::to_string(n) + "," + std::to_string(q) + "}";
}

SingularityType canonical(int n, int q) {
  if (n < 2) throw Error(Errc::OutOfRange, "singularity order must be >= 2");
  if (std::gcd(n, q) != 1) throw Error(Errc::NotCoprime, "gcd(" + std::to_string(n) + ", " + std::to_string(q) + ") != 1");
  q = static_cast<int>(positive_mod(q, n));
  int inv = static_cast<int>(mod_inverse(q, n));
  return SingularityType{n, std::min(q, inv)};
}

SingularityType parse_singularity(std::string_view text) {
  static const std::regex pair_re(R"(A_?\{?(\d+)\s*,\s*(\d+)\}?)");
  static const std::regex single_re(R"(A_?\{?(\d+)\}?)");
  std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, pair_re)) return canonical(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(s, m, single_re)) {
    int k = std::stoi(m[1]);
    return canonical(k + 1, k);
  }
  throw Error(Errc::ParseError, "not a singularity label: '" + s + "'");
}

ExceptionalChain hj_chain(int n, int q) {
  if (n < 2 || q < 1 || q >= n || std::gcd(n, q) != 1)
    throw Error(Errc::OutOfRange, "bad pair (" + std::to_string(n) + ", " + std::to_string(q) + ")");
  ExceptionalChain c;
  // n/q = b - 1/(q/r) with b = ceil(n/q), r = b q - n
  long long a = n, b = q;
  while (b > 0) {
    long long c_i = (a + b - 1) / b;
    c.selfints.push_back(static_cast<int>(c_i));
    long long r = c_i * b - a;
    a = b;
    b = r;
  }
  return c;
}

ExceptionalChain hj_chain(const SingularityType& s) { return hj_chain(s.n, s.q); }

Rational continued_fraction_value(const ExceptionalChain& chain) {
  if (chain.selfints.empty()) throw Error(Errc::OutOfRange, "empty chain");
  Rational v = chain.selfints.back();
  for (std::size_t i = chain.selfints.size() - 1; i-- > 0;) v = Rational(chain.selfints[i]) - 1 / v;
  return v;
}

std::vector<Rational> discrepancies(const ExceptionalChain& chain) {
  const auto& ns = chain.selfints;
  std::size_t k = ns.size();
  if (k == 0) throw Error(Errc::OutOfRange, "empty chain");
  // Tridiagonal M a = b with M_ii = -n_i, off-diagonal 1, b_i = 2 - n_i (Thomas algorithm).
  std::vector<Rational> diag(k), rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    diag[i] = -ns[i];
    rhs[i] = 2 - ns[i];
  }
  for (std::size_t i = 1; i < k; ++i) {
    Rational w = 1 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<Rational> a(k);
  a[k - 1] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) a[i] = (rhs[i] - a[i + 1]) / diag[i];
  return a;
}

Rational delta_k2(const SingularityType& s) {
  auto chain = hj_chain(s);
  auto a = discrepancies(chain);
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * (2 - chain.selfints[i]);
  return total;
}

int delta_e(const SingularityType& s) { return static_cast<int>(hj_chain(s).selfints.size()); }

ResolutionData resolve(const SingularityType& s) {
  ResolutionData r;
  r.chain = hj_chain(s);
  r.discrepancies = discrepancies(r.chain);
  r.delta_k2 = delta_k2(s);
  r.delta_e = static_cast<int>(r.chain.selfints.size());
  return r;
}

// ---------------------------------------------------------------------------

void SingularConfiguration::add(const SingularityType& s, int multiplicity) {
  if (multiplicity < 0) throw Error(Errc::OutOfRange, "negative multiplicity");
  if (multiplicity == 0) return;
  counts_[canonical(s.n, s.q)] += multiplicity;
}

void SingularConfiguration::merge(const SingularConfiguration& other) {
  for (const auto& [s, c] : other.counts_) add(s, c);
}

int SingularConfiguration::total_points() const {
  int total = 0;
  for (const auto& [s, c] : counts_) total += c;
  return total;
}

Rational SingularConfiguration::total_delta_k2() const {
  Rational total = 0;
  for (const auto& [s, c] : counts_) total += c * delta_k2(s);
  return total;
}

int SingularConfiguration::total_delta_e() const {
  int total = 0;
  for (const auto& [s, c] : counts_) total += c * delta_e(s);
  return total;
}

std::string SingularConfiguration::to_string() const {
  if (counts_.empty()) return "smooth";
  std::string out;
  for (const auto& [s, c] : counts_) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c);
    out += s.name();
  }
  return out;
}

SingularConfiguration parse_configuration(std::string_view text) {
  SingularConfiguration cfg;
  std::string s(text);
  if (s == "smooth" || s.empty()) return cfg;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    std::string term = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    auto first = term.find_first_not_of(' ');
    auto last = term.find_last_not_of(' ');
    if (first == std::string::npos) throw Error(Errc::ParseError, "empty term in '" + s + "'");
    term = term.substr(first, last - first + 1);
    std::size_t digits = 0;
    while (digits < term.size() && std::isdigit(static_cast<unsigned char>(term[digits]))) ++digits;
    int mult = digits ? std::stoi(term.substr(0, digits)) : 1;
    cfg.add(parse_singularity(term.substr(digits)), mult);
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return cfg;
}

}  // namespace fq
