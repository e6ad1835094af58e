#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qmd {

/// An n-qubit Pauli string in symplectic form: qubit q carries
/// I (x=0,z=0), X (1,0), Z (0,1) or Y (1,1). Qubit 0 is the least
/// significant bit and the rightmost character of the text word.
struct PauliString {
  int n = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  static PauliString identity(int n) { return {n, 0, 0}; }
  /// Parses a word such as "XZIY" (leftmost character is qubit n-1).
  static PauliString from_word(const std::string& word);
  std::string word() const;

  bool is_identity() const { return x == 0 && z == 0; }
  char at(int qubit) const;
  std::uint64_t support() const { return x | z; }
  int weight() const;
  int y_count() const;

  bool commutes_with(const PauliString& o) const;
  bool qubitwise_commutes_with(const PauliString& o) const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n == b.n && a.x == b.x && a.z == b.z;
  }
  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.x != b.x) return a.x < b.x;
    return a.z < b.z;
  }
};

/// Product a*b = phase * result, phase in {1, i, -1, -i} stored as a power of i.
struct PauliProduct {
  int i_power = 0;  // phase = i^i_power, i_power in [0, 4)
  PauliString result;
  std::complex<double> phase() const;
};

PauliProduct pauli_multiply(const PauliString& a, const PauliString& b);

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

/// Real-weighted sum of Pauli strings; the identity term holds any constant.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) {}
  PauliSum(int n, std::vector<PauliTerm> terms);

  static PauliSum constant(int n, double c);

  int n_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(double coeff, const PauliString& s);
  void add(double coeff, const std::string& word) { add(coeff, PauliString::from_word(word)); }

  /// Merges duplicates, drops |c| < prune, sorts by (x, z).
  PauliSum& canonicalize(double prune = 1e-12);
  PauliSum canonicalized(double prune = 1e-12) const;

  double identity_coeff() const;
  double coeff_of(const PauliString& s) const;
  PauliSum without_identity() const;

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator-=(const PauliSum& o);
  PauliSum& operator*=(double s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, double s) { return a *= s; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= s; }

  /// Text form: one "<coeff> <WORD>" line per term, 17 significant digits.
  std::string to_text() const;
  static PauliSum from_text(const std::string& text);

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Complex-weighted accumulator used for symbolic operator products.
class ComplexPauliSum {
 public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  ComplexPauliSum() = default;
  explicit ComplexPauliSum(int n) : n_(n) {}
  explicit ComplexPauliSum(const PauliSum& p);

  static ComplexPauliSum single(const PauliString& s, std::complex<double> c);

  int n_qubits() const { return n_; }
  const std::map<Key, std::complex<double>>& terms() const { return terms_; }

  void add(std::complex<double> c, const PauliString& s);
  ComplexPauliSum& operator+=(const ComplexPauliSum& o);
  ComplexPauliSum& operator*=(std::complex<double> s);
  friend ComplexPauliSum operator+(ComplexPauliSum a, const ComplexPauliSum& b) { return a += b; }
  friend ComplexPauliSum operator*(ComplexPauliSum a, std::complex<double> s) { return a *= s; }
  friend ComplexPauliSum operator*(const ComplexPauliSum& a, const ComplexPauliSum& b);

  ComplexPauliSum adjoint() const;
  void prune(double tol = 1e-14);

  /// Converts to a real sum; throws NumericalError if an imaginary part
  /// exceeds `imag_tol` (the operator is not Hermitian).
  PauliSum to_real(double imag_tol = 1e-9) const;

 private:
  int n_ = 0;
  std::map<Key, std::complex<double>> terms_;
};

/// Symmetric product (A*B*A for Hermitian A, B) reduced to a real sum.
PauliSum sandwich(const PauliSum& outer, const PauliSum& inner);
PauliSum square(const PauliSum& a);

}  // namespace qmd
