#include "grasslab/gf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "grasslab/errors.hpp"

namespace grasslab::gf {

namespace {

int mod(int a, int p) {
  int r = a % p;
  return r < 0 ? r + p : r;
}

// Remainder of `num` modulo monic-or-not `den` over GF(p); both low-to-high.
std::vector<int> poly_rem(std::vector<int> num, const std::vector<int>& den, int p) {
  int dd = static_cast<int>(den.size()) - 1;
  while (dd > 0 && den[dd] == 0) --dd;
  int lead_inv = 1;
  while ((lead_inv * den[dd]) % p != 1) ++lead_inv;
  for (int i = static_cast<int>(num.size()) - 1; i >= dd; --i) {
    int c = mod(num[i] * lead_inv, p);
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] = mod(num[i - dd + j] - c * den[j], p);
  }
  num.resize(std::max(dd, 1));
  return num;
}

std::vector<int> poly_mul_reduce(const std::vector<int>& a, const std::vector<int>& b,
                                 const FieldSpec& f) {
  int p = f.p();
  int m = f.m();
  std::vector<int> prod(2 * m - 1, 0);
  for (int i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  if (m == 1) return {prod[0]};
  auto r = poly_rem(prod, f.poly(), p);
  r.resize(m, 0);
  return r;
}

void require_same(const FieldElement& a, const FieldElement& b) {
  if (!a.spec()->same_field(*b.spec())) {
    throw FieldMismatchError("operands belong to GF(" + a.spec()->designator() + ") and GF(" +
                             b.spec()->designator() + ")");
  }
}

FieldElement pow(const FieldElement& a, long long e) {
  FieldElement result = FieldElement::one(a.spec());
  FieldElement base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  int deg = static_cast<int>(poly.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // Every monic divisor of degree d, 1 <= d <= deg/2.
  for (int d = 1; d <= deg / 2; ++d) {
    std::vector<int> cand(d + 1, 0);
    cand[d] = 1;
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      long long c = code;
      for (int i = 0; i < d; ++i) {
        cand[i] = static_cast<int>(c % p);
        c /= p;
      }
      auto r = poly_rem(poly, cand, p);
      if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) return false;
    }
  }
  return true;
}

FieldSpec::FieldSpec(int p, int m, std::vector<int> poly) : p_(p), m_(m), poly_(std::move(poly)) {
  q_ = 1;
  for (int i = 0; i < m_; ++i) q_ *= p_;
}

std::shared_ptr<const FieldSpec> FieldSpec::make(int p, int m, std::vector<int> poly) {
  if (!is_prime(p)) throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) throw PreconditionError("extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < m; ++i) q *= p;
  if (q > 256) throw BoundError("field order " + std::to_string(q) + " exceeds 256");
  if (m == 1) {
    poly = {0, 1};
  } else {
    if (static_cast<int>(poly.size()) != m + 1 || poly[m] != 1)
      throw PreconditionError("defining polynomial must be monic of degree " + std::to_string(m));
    for (int& c : poly) c = mod(c, p);
    if (!is_irreducible(p, poly))
      throw PreconditionError("defining polynomial is reducible over GF(" + std::to_string(p) + ")");
  }
  std::shared_ptr<FieldSpec> spec(new FieldSpec(p, m, std::move(poly)));
  spec->build_tables();
  return spec;
}

std::vector<int> FieldSpec::supported_orders() { return {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}; }

std::shared_ptr<const FieldSpec> FieldSpec::of_order(int q) {
  static const std::map<int, std::pair<int, std::vector<int>>> polys = {
      {4, {2, {1, 1, 1}}},        // x^2 + x + 1
      {8, {2, {1, 1, 0, 1}}},     // x^3 + x + 1
      {9, {3, {1, 0, 1}}},        // x^2 + 1
      {16, {2, {1, 1, 0, 0, 1}}}  // x^4 + x + 1
  };
  if (auto it = polys.find(q); it != polys.end()) {
    int m = static_cast<int>(it->second.second.size()) - 1;
    return make(it->second.first, m, it->second.second);
  }
  if (is_prime(q) && q <= 13) return make(q, 1, {});
  throw PreconditionError("unsupported field order " + std::to_string(q));
}

std::shared_ptr<const FieldSpec> FieldSpec::parse(std::string_view designator) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw ParseError("bad field designator '" + std::string(designator) + "'");
    return v;
  };
  auto caret = designator.find('^');
  int q = 0;
  if (caret == std::string_view::npos) {
    q = to_int(designator);
  } else {
    int p = to_int(designator.substr(0, caret));
    int m = to_int(designator.substr(caret + 1));
    if (!is_prime(p) || m < 1 || m > 8)
      throw ParseError("bad field designator '" + std::string(designator) + "'");
    q = 1;
    for (int i = 0; i < m; ++i) q *= p;
  }
  return of_order(q);
}

std::string FieldSpec::designator() const {
  if (m_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(m_);
}

bool FieldSpec::same_field(const FieldSpec& other) const {
  return p_ == other.p_ && m_ == other.m_ && (m_ == 1 || poly_ == other.poly_);
}

Elem FieldSpec::inv(Elem a) const {
  if (a == 0) throw DivisionByZeroError("inverse of zero in GF(" + designator() + ")");
  return inv_[a];
}

Elem FieldSpec::embed_prime(int c) const { return static_cast<Elem>(mod(c, p_)); }

std::vector<int> FieldSpec::coefficients(Elem a) const {
  std::vector<int> rep(m_);
  int c = a;
  for (int i = 0; i < m_; ++i) {
    rep[i] = c % p_;
    c /= p_;
  }
  return rep;
}

Elem FieldSpec::encode(std::span<const int> rep) const {
  int code = 0;
  for (int i = m_ - 1; i >= 0; --i) code = code * p_ + mod(i < static_cast<int>(rep.size()) ? rep[i] : 0, p_);
  return static_cast<Elem>(code);
}

void FieldSpec::build_tables() {
  std::shared_ptr<const FieldSpec> self(std::shared_ptr<const FieldSpec>{}, this);
  std::vector<FieldElement> elems;
  elems.reserve(q_);
  for (int c = 0; c < q_; ++c) elems.emplace_back(self, coefficients(static_cast<Elem>(c)));

  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  frob_.assign(m_ * q_, 0);
  for (int a = 0; a < q_; ++a) {
    for (int b = 0; b < q_; ++b) {
      add_[a * q_ + b] = gf::add(elems[a], elems[b]).code();
      mul_[a * q_ + b] = gf::mul(elems[a], elems[b]).code();
    }
  }
  for (int a = 0; a < q_; ++a) {
    for (int b = 0; b < q_; ++b) {
      if (add_[a * q_ + b] == 0) neg_[a] = static_cast<Elem>(b);
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);
    }
    for (int j = 0; j < m_; ++j) frob_[j * q_ + a] = gf::frobenius(elems[a], j).code();
  }
}

FieldElement::FieldElement(Field spec, std::vector<int> rep) : spec_(std::move(spec)), rep_(std::move(rep)) {
  rep_.resize(spec_->m(), 0);
  for (int& c : rep_) c = mod(c, spec_->p());
}

FieldElement FieldElement::from_code(Field spec, Elem code) {
  auto rep = spec->coefficients(code);
  return FieldElement(std::move(spec), std::move(rep));
}

FieldElement FieldElement::zero(Field spec) { return FieldElement(std::move(spec), {}); }

FieldElement FieldElement::one(Field spec) { return FieldElement(std::move(spec), {1}); }

Elem FieldElement::code() const { return spec_->encode(rep_); }

bool FieldElement::is_zero() const {
  return std::all_of(rep_.begin(), rep_.end(), [](int c) { return c == 0; });
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.spec_->same_field(*b.spec_) && a.rep_ == b.rep_;
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  std::vector<int> rep(a.rep().size());
  for (std::size_t i = 0; i < rep.size(); ++i) rep[i] = (a.rep()[i] + b.rep()[i]) % a.spec()->p();
  return FieldElement(a.spec(), std::move(rep));
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.spec(), poly_mul_reduce(a.rep(), b.rep(), *a.spec()));
}

FieldElement inv(const FieldElement& a) {
  if (a.is_zero()) throw DivisionByZeroError("inverse of zero in GF(" + a.spec()->designator() + ")");
  return pow(a, a.spec()->q() - 2);
}

FieldElement frobenius(const FieldElement& a, int j) {
  if (j < 0) throw PreconditionError("Frobenius index must be non-negative");
  FieldElement r = a;
  for (int i = 0; i < j % a.spec()->m(); ++i) r = pow(r, a.spec()->p());
  return r;
}

std::vector<int> all_automorphisms(const FieldSpec& spec) {
  const int q = spec.q();
  std::vector<int> result;
  for (int j = 0; j < spec.m(); ++j) {
    std::vector<bool> hit(q, false);
    for (int a = 0; a < q; ++a) {
      auto fa = spec.frob(static_cast<Elem>(a), j);
      hit[fa] = true;
      for (int b = 0; b < q; ++b) {
        auto fb = spec.frob(static_cast<Elem>(b), j);
        if (spec.frob(spec.add(a, b), j) != spec.add(fa, fb) ||
            spec.frob(spec.mul(a, b), j) != spec.mul(fa, fb))
          throw Error("Frobenius power " + std::to_string(j) + " is not a field automorphism");
      }
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }))
      throw Error("Frobenius power " + std::to_string(j) + " is not bijective");
    result.push_back(j);
  }
  return result;
}

}  // namespace grasslab::gf
