#include "qmd/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qmd/error.hpp"

namespace qmd {

namespace {

int popcount(std::uint64_t v) { return std::popcount(v); }

}  // namespace

PauliString PauliString::from_word(const std::string& word) {
  const int n = static_cast<int>(word.size());
  if (n > 64) throw DomainError("Pauli words longer than 64 qubits are not supported");
  PauliString p{n, 0, 0};
  for (int i = 0; i < n; ++i) {
    const int q = n - 1 - i;
    switch (word[i]) {
      case 'I': break;
      case 'X': p.x |= 1ULL << q; break;
      case 'Y': p.x |= 1ULL << q; p.z |= 1ULL << q; break;
      case 'Z': p.z |= 1ULL << q; break;
      default: throw DomainError(std::string("invalid Pauli character '") + word[i] + "'");
    }
  }
  return p;
}

char PauliString::at(int qubit) const {
  const bool xb = (x >> qubit) & 1ULL;
  const bool zb = (z >> qubit) & 1ULL;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string PauliString::word() const {
  std::string w(n, 'I');
  for (int q = 0; q < n; ++q) w[n - 1 - q] = at(q);
  return w;
}

int PauliString::weight() const { return popcount(support()); }
int PauliString::y_count() const { return popcount(x & z); }

bool PauliString::commutes_with(const PauliString& o) const {
  return (popcount((x & o.z) ^ (z & o.x)) & 1) == 0;
}

bool PauliString::qubitwise_commutes_with(const PauliString& o) const {
  // On every qubit where both act non-trivially they must act identically.
  const std::uint64_t both = support() & o.support();
  return ((x ^ o.x) & both) == 0 && ((z ^ o.z) & both) == 0;
}

std::complex<double> PauliProduct::phase() const {
  static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[i_power & 3];
}

PauliProduct pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw DomainError("pauli_multiply: qubit count mismatch");
  // P(x,z) = i^{|x&z|} X^x Z^z, and Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1.
  PauliString r{a.n, a.x ^ b.x, a.z ^ b.z};
  int power = a.y_count() + b.y_count() - r.y_count() + 2 * popcount(a.z & b.x);
  power %= 4;
  if (power < 0) power += 4;
  return {power, r};
}

PauliSum::PauliSum(int n, std::vector<PauliTerm> terms) : n_(n), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.string.n != n_) throw DomainError("PauliSum: term qubit count mismatch");
}

PauliSum PauliSum::constant(int n, double c) {
  PauliSum s(n);
  s.add(c, PauliString::identity(n));
  return s;
}

void PauliSum::add(double coeff, const PauliString& s) {
  if (s.n != n_) throw DomainError("PauliSum::add: qubit count mismatch");
  terms_.push_back({coeff, s});
}

PauliSum& PauliSum::canonicalize(double prune) {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  std::vector<PauliTerm> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [prune](const PauliTerm& t) { return std::abs(t.coeff) < prune; });
  terms_ = std::move(merged);
  return *this;
}

PauliSum PauliSum::canonicalized(double prune) const {
  PauliSum c = *this;
  c.canonicalize(prune);
  return c;
}

double PauliSum::coeff_of(const PauliString& s) const {
  double c = 0.0;
  for (const auto& t : terms_)
    if (t.string == s) c += t.coeff;
  return c;
}

double PauliSum::identity_coeff() const { return coeff_of(PauliString::identity(n_)); }

PauliSum PauliSum::without_identity() const {
  PauliSum out(n_);
  for (const auto& t : terms_)
    if (!t.string.is_identity()) out.terms_.push_back(t);
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  if (terms_.empty() && n_ == 0) n_ = o.n_;
  if (o.n_ != n_) throw DomainError("PauliSum: qubit count mismatch in addition");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return canonicalize();
}

PauliSum& PauliSum::operator-=(const PauliSum& o) {
  PauliSum neg = o;
  neg *= -1.0;
  return *this += neg;
}

PauliSum& PauliSum::operator*=(double s) {
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

std::string PauliSum::to_text() const {
  std::ostringstream out;
  char buf[64];
  for (const auto& t : terms_) {
    std::snprintf(buf, sizeof buf, "%+.17g", t.coeff);
    out << buf << ' ' << t.string.word() << '\n';
  }
  return out.str();
}

PauliSum PauliSum::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PauliSum out;
  bool first = true;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cstr, word;
    if (!(ls >> cstr)) continue;
    if (cstr[0] == '#') continue;
    if (!(ls >> word)) throw ConfigError("PauliSum text: missing word in line '" + line + "'");
    // Accept a unicode minus sign as written in some listings.
    if (cstr.rfind("\xE2\x88\x92", 0) == 0) cstr = "-" + cstr.substr(3);
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(cstr, &used);
      if (used != cstr.size()) throw std::invalid_argument(cstr);
    } catch (const std::exception&) {
      throw ConfigError("PauliSum text: bad coefficient '" + cstr + "'");
    }
    const auto p = PauliString::from_word(word);
    if (first) {
      out = PauliSum(p.n);
      first = false;
    }
    out.add(c, p);
  }
  return out.canonicalize(0.0);
}

ComplexPauliSum::ComplexPauliSum(const PauliSum& p) : n_(p.n_qubits()) {
  for (const auto& t : p.terms()) add(t.coeff, t.string);
}

ComplexPauliSum ComplexPauliSum::single(const PauliString& s, std::complex<double> c) {
  ComplexPauliSum r(s.n);
  r.add(c, s);
  return r;
}

void ComplexPauliSum::add(std::complex<double> c, const PauliString& s) {
  if (s.n != n_) throw DomainError("ComplexPauliSum::add: qubit count mismatch");
  terms_[{s.x, s.z}] += c;
}

ComplexPauliSum& ComplexPauliSum::operator+=(const ComplexPauliSum& o) {
  if (terms_.empty() && n_ == 0) n_ = o.n_;
  if (o.n_ != n_) throw DomainError("ComplexPauliSum: qubit count mismatch");
  for (const auto& [k, c] : o.terms_) terms_[k] += c;
  return *this;
}

ComplexPauliSum& ComplexPauliSum::operator*=(std::complex<double> s) {
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

ComplexPauliSum operator*(const ComplexPauliSum& a, const ComplexPauliSum& b) {
  if (a.n_ != b.n_) throw DomainError("ComplexPauliSum: qubit count mismatch in product");
  ComplexPauliSum r(a.n_);
  for (const auto& [ka, ca] : a.terms_) {
    const PauliString pa{a.n_, ka.first, ka.second};
    for (const auto& [kb, cb] : b.terms_) {
      const auto prod = pauli_multiply(pa, PauliString{b.n_, kb.first, kb.second});
      r.terms_[{prod.result.x, prod.result.z}] += ca * cb * prod.phase();
    }
  }
  return r;
}

ComplexPauliSum ComplexPauliSum::adjoint() const {
  ComplexPauliSum r(n_);
  for (const auto& [k, c] : terms_) r.terms_[k] = std::conj(c);
  return r;
}

void ComplexPauliSum::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

PauliSum ComplexPauliSum::to_real(double imag_tol) const {
  PauliSum out(n_);
  double scale = 0.0;
  for (const auto& [k, c] : terms_) scale = std::max(scale, std::abs(c));
  for (const auto& [k, c] : terms_) {
    if (std::abs(c.imag()) > imag_tol * std::max(1.0, scale))
      throw NumericalError("operator is not Hermitian: imaginary coefficient " +
                           std::to_string(c.imag()) + " on " +
                           PauliString{n_, k.first, k.second}.word());
    out.add(c.real(), PauliString{n_, k.first, k.second});
  }
  return out.canonicalize();
}

PauliSum sandwich(const PauliSum& outer, const PauliSum& inner) {
  const ComplexPauliSum a(outer);
  return (a * ComplexPauliSum(inner) * a).to_real();
}

PauliSum square(const PauliSum& a) {
  const ComplexPauliSum c(a);
  return (c * c).to_real();
}

}  // namespace qmd
