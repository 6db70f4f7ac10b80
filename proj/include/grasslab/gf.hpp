#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grasslab::gf {

/// Packed element code: the coefficient vector read as a base-p integer.
using Elem = std::uint8_t;

/// GF(p^m) in a fixed polynomial basis.
///
/// Arithmetic is defined on coefficient vectors (see FieldElement); this class
/// additionally caches add/mul/inverse/Frobenius tables over packed codes so
/// that matrix code can run on plain bytes.
class FieldSpec {
 public:
  /// Validates primality of `p` and irreducibility of `poly` (low-to-high
  /// coefficients, monic, degree m). `poly` is ignored when m == 1.
  static std::shared_ptr<const FieldSpec> make(int p, int m, std::vector<int> poly);

  /// One of the built-in fields: GF(p) for p <= 13, GF(4), GF(8), GF(9), GF(16).
  static std::shared_ptr<const FieldSpec> of_order(int q);

  /// Parses "p" or "p^m" (a plain prime power like "16" is accepted too).
  static std::shared_ptr<const FieldSpec> parse(std::string_view designator);

  static std::vector<int> supported_orders();

  int p() const { return p_; }
  int m() const { return m_; }
  int q() const { return q_; }
  const std::vector<int>& poly() const { return poly_; }

  /// "p" for prime fields, "p^m" otherwise.
  std::string designator() const;

  bool same_field(const FieldSpec& other) const;

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  /// Throws DivisionByZeroError for 0.
  Elem inv(Elem a) const;
  Elem frob(Elem a, int j) const { return frob_[(j % m_) * q_ + a]; }

  /// Constant-polynomial embedding of GF(p).
  Elem embed_prime(int c) const;

  std::vector<int> coefficients(Elem a) const;
  Elem encode(std::span<const int> rep) const;

 private:
  FieldSpec(int p, int m, std::vector<int> poly);
  void build_tables();

  int p_;
  int m_;
  int q_;
  std::vector<int> poly_;
  std::vector<Elem> add_, neg_, mul_, inv_, frob_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// An element of a field, held as its coefficient vector.
class FieldElement {
 public:
  FieldElement(Field spec, std::vector<int> rep);
  static FieldElement from_code(Field spec, Elem code);
  static FieldElement zero(Field spec);
  static FieldElement one(Field spec);

  const Field& spec() const { return spec_; }
  const std::vector<int>& rep() const { return rep_; }
  Elem code() const;
  bool is_zero() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  Field spec_;
  std::vector<int> rep_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
/// a^(p^j).
FieldElement frobenius(const FieldElement& a, int j);

/// Indices j of the automorphisms x -> x^(p^j); each one is re-verified
/// exhaustively (additive, multiplicative, bijective) before being returned.
std::vector<int> all_automorphisms(const FieldSpec& spec);

bool is_prime(int p);
/// Trial division by every monic polynomial of degree 1..m/2 over GF(p).
bool is_irreducible(int p, const std::vector<int>& poly);

}  // namespace grasslab::gf
