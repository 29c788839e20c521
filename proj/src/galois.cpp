#include "lrc/galois.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lrc/error.hpp"

namespace lrc::galois {

namespace {

using Poly = std::vector<std::uint32_t>;  // low-degree first over Z_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic-or-not b over Z_p (b nonzero).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  // inverse of the leading coefficient of b
  std::uint32_t lead_inv = 1;
  for (std::uint32_t x = 1; x < p; ++x) {
    if ((static_cast<std::uint64_t>(x) * b.back()) % p == 1) {
      lead_inv = x;
      break;
    }
  }
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - 1 - db;
    const std::uint64_t factor = (static_cast<std::uint64_t>(a.back()) * lead_inv) % p;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = (factor * b[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1);
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t w) {
  if (w == 1) return Poly{0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < w; ++i) count *= p;
  // idx enumerates (c_0, ..., c_{w-1}) lexicographically: c_0 is the most
  // significant digit.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f(w + 1);
    std::uint64_t t = idx;
    for (std::uint32_t j = 0; j < w; ++j) {
      f[w - 1 - j] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[w] = 1;
    if (f[0] == 0) continue;  // divisible by X
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::InvariantViolation, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Reference multiplication on packed codes, used only while building tables.
class SlowArith {
 public:
  SlowArith(std::uint32_t p, std::uint32_t w, const Poly& modulus)
      : p_(p), w_(w), modulus_(modulus) {
    if (p == 2) {
      for (std::uint32_t i = 0; i < w; ++i) mask_ |= modulus[i] << i;
    }
  }

  Elem mul(Elem a, Elem b) const {
    if (p_ == 2) return mul2(a, b);
    Poly pa = unpack(a), pb = unpack(b);
    Poly prod(2 * w_, 0);
    for (std::uint32_t i = 0; i < w_; ++i) {
      if (pa[i] == 0) continue;
      for (std::uint32_t j = 0; j < w_; ++j) {
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
      }
    }
    return pack(poly_mod(prod, modulus_, p_));
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem result = 1, base = a;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

 private:
  Elem mul2(Elem a, Elem b) const {
    const Elem top = Elem{1} << (w_ - 1);
    const Elem full = (w_ == 32) ? ~Elem{0} : ((Elem{1} << w_) - 1);
    Elem result = 0;
    while (b != 0) {
      if (b & 1) result ^= a;
      b >>= 1;
      const bool carry = (a & top) != 0;
      a = (a << 1) & full;
      if (carry) a ^= mask_;
    }
    return result;
  }

  Poly unpack(Elem a) const {
    Poly out(w_);
    for (std::uint32_t i = 0; i < w_; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  }

  Elem pack(const Poly& c) const {
    Elem v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
    return v;
  }

  std::uint32_t p_;
  std::uint32_t w_;
  Poly modulus_;
  Elem mask_ = 0;
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

std::optional<PrimePower> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{q, 1};
  unsigned w = 0;
  while (q % p == 0) {
    q /= p;
    ++w;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, w};
}

std::shared_ptr<const Field> Field::create(std::uint32_t p, std::uint32_t w) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  }
  if (w == 0) throw Error(ErrorKind::DomainError, "field exponent must be >= 1");
  const auto q = checked_pow(p, w);
  if (!q || *q > kMaxFieldSize) {
    throw Error(ErrorKind::TooLarge, "p^w exceeds the exact-arithmetic guard 2^20");
  }
  return std::shared_ptr<const Field>(new Field(p, w));
}

Field::Field(std::uint32_t p, std::uint32_t w)
    : p_(p), w_(w), q_(static_cast<std::uint32_t>(*checked_pow(p, w))) {
  modulus_ = smallest_irreducible(p, w);
  const SlowArith slow(p, w, modulus_);

  // Primitive element: first code whose order is q - 1.
  const std::uint64_t order = q_ - 1;
  Elem gen = 1;
  if (order > 1) {
    const auto factors = prime_factors(order);
    for (Elem g = 2; g < q_; ++g) {
      const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t f) {
        return slow.pow(g, order / f) != 1;
      });
      if (primitive) {
        gen = g;
        break;
      }
    }
  }

  exp_.assign(2 * order, 0);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow.mul(x, gen);
  }

  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    if (p_ == 2) {
      neg_[a] = a;
      continue;
    }
    Elem v = 0, scale = 1, t = a;
    for (std::uint32_t i = 0; i < w_; ++i) {
      const std::uint32_t c = t % p_;
      t /= p_;
      v += ((p_ - c) % p_) * scale;
      scale *= p_;
    }
    neg_[a] = v;
  }

  if (p_ != 2 && w_ > 1 && static_cast<std::uint64_t>(q_) * q_ <= (1u << 20)) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        Elem v = 0, scale = 1, ta = a, tb = b;
        for (std::uint32_t i = 0; i < w_; ++i) {
          v += ((ta % p_ + tb % p_) % p_) * scale;
          ta /= p_;
          tb /= p_;
          scale *= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = v;
      }
    }
  }
}

std::optional<std::uint32_t> Field::ell() const noexcept {
  if (w_ % 2 != 0) return std::nullopt;
  return static_cast<std::uint32_t>(*checked_pow(p_, w_ / 2));
}

std::optional<std::uint32_t> Field::half_degree() const noexcept {
  if (w_ % 2 != 0) return std::nullopt;
  return w_ / 2;
}

Elem Field::from_int(std::int64_t v) const noexcept {
  const std::int64_t m = static_cast<std::int64_t>(p_);
  return static_cast<Elem>(((v % m) + m) % m);
}

Elem Field::add(Elem a, Elem b) const noexcept {
  if (p_ == 2) return a ^ b;
  if (w_ == 1) {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  Elem v = 0, scale = 1;
  for (std::uint32_t i = 0; i < w_; ++i) {
    const std::uint32_t s = a % p_ + b % p_;
    v += (s >= p_ ? s - p_ : s) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return v;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::DivideByZero, "inverse of zero");
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  const std::uint64_t idx = (static_cast<std::uint64_t>(log_[a]) * (e % order)) % order;
  return exp_[idx];
}

bool Field::in_subfield(Elem x, std::uint32_t d) const noexcept {
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < d; ++i) e *= p_;
  return pow(x, e) == x;
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(w_);
  for (std::uint32_t i = 0; i < w_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != w_) {
    throw Error(ErrorKind::FormatError, "coefficient vector must have length " + std::to_string(w_));
  }
  Elem v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw Error(ErrorKind::FormatError, "coefficient out of range");
    v = v * p_ + c[i];
  }
  return v;
}

FieldElement Field::element(Elem v) const {
  if (v >= q_) throw Error(ErrorKind::FormatError, "element code out of range");
  return FieldElement(shared_from_this(), v);
}

FieldElement::FieldElement(std::shared_ptr<const Field> field, Elem value)
    : field_(std::move(field)), value_(value) {}

const Field& FieldElement::check(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) {
    throw Error(ErrorKind::SpecMismatch, "operands belong to different fields");
  }
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, check(o).add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, check(o).sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, check(o).mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, check(o).div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

namespace {

std::uint32_t require_ell(const Field& f) {
  const auto ell = f.ell();
  if (!ell) {
    throw Error(ErrorKind::NoSquareRoot,
                "GF(" + std::to_string(f.q()) + ") is not a square field (w odd)");
  }
  return *ell;
}

}  // namespace

std::vector<Elem> artin_schreier_kernel(const Field& f) {
  const std::uint32_t ell = require_ell(f);
  std::vector<Elem> out;
  out.reserve(ell);
  for (Elem a = 0; a < f.q(); ++a) {
    if (f.add(f.pow(a, ell), a) == 0) out.push_back(a);
  }
  return out;
}

std::vector<Elem> unit_subgroup(const Field& f, std::uint32_t u) {
  const std::uint32_t ell = require_ell(f);
  if (u == 0 || (ell - 1) % u != 0) {
    throw Error(ErrorKind::NotDivisor,
                std::to_string(u) + " does not divide ell - 1 = " + std::to_string(ell - 1));
  }
  std::vector<Elem> out;
  out.reserve(u);
  for (Elem x = 1; x < f.q(); ++x) {
    if (f.pow(x, u) == 1 && f.pow(x, ell) == x) out.push_back(x);
  }
  return out;
}

std::uint32_t multiplicative_order_degree(std::uint32_t p, std::uint32_t u) {
  if (u == 0 || std::gcd(p, u) != 1) {
    throw Error(ErrorKind::NotAdmissible, "u must be a positive integer coprime to p");
  }
  std::uint64_t pt = p % u;
  for (std::uint32_t t = 1; t <= u; ++t) {
    if ((pt + u - 1) % u == 0) return t;  // p^t == 1 (mod u)
    pt = (pt * p) % u;
  }
  throw Error(ErrorKind::NotAdmissible, "p has no finite order modulo u");
}

bool is_admissible(std::uint32_t p, std::uint32_t half_degree, std::uint64_t u, std::uint32_t v) {
  if (u == 0 || v > half_degree) return false;
  const auto ell = checked_pow(p, half_degree);
  const auto pv = checked_pow(p, v);
  if (!ell || !pv) return false;
  const std::uint64_t g = (v == 0) ? *ell - 1 : std::gcd(*pv - 1, *ell - 1);
  return g % u == 0;
}

std::vector<Elem> kernel_basis(const Field& f, std::uint32_t h) {
  const std::vector<Elem> kernel = artin_schreier_kernel(f);
  std::vector<Elem> scalars;
  for (Elem x = 0; x < f.q(); ++x) {
    if (f.in_subfield(x, h)) scalars.push_back(x);
  }
  std::vector<char> in_span(f.q(), 0);
  std::vector<Elem> span{0};
  in_span[0] = 1;
  std::vector<Elem> basis;
  for (Elem a : kernel) {
    if (in_span[a]) continue;
    basis.push_back(a);
    std::vector<Elem> next;
    next.reserve(span.size() * scalars.size());
    for (Elem s : scalars) {
      const Elem sa = f.mul(s, a);
      for (Elem x : span) {
        const Elem y = f.add(x, sa);
        if (!in_span[y]) {
          in_span[y] = 1;
          next.push_back(y);
        }
      }
    }
    span.insert(span.end(), next.begin(), next.end());
  }
  return basis;
}

RepairSubspace repair_subspace(const Field& f, std::uint32_t u, std::uint32_t v) {
  require_ell(f);
  const std::uint32_t half = *f.half_degree();
  if (!is_admissible(f.p(), half, u, v)) {
    throw Error(ErrorKind::NotAdmissible,
                "(u=" + std::to_string(u) + ", v=" + std::to_string(v) +
                    ") violates u | gcd(p^v - 1, ell - 1)");
  }
  RepairSubspace out;
  out.h = multiplicative_order_degree(f.p(), u);
  if (v % out.h != 0) {
    throw Error(ErrorKind::NotAdmissible, "h = " + std::to_string(out.h) + " does not divide v");
  }
  const std::vector<Elem> full = kernel_basis(f, out.h);
  const std::size_t dim = v / out.h;
  out.basis.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(dim));

  std::vector<Elem> scalars;
  for (Elem x = 0; x < f.q(); ++x) {
    if (f.in_subfield(x, out.h)) scalars.push_back(x);
  }
  std::vector<Elem> span{0};
  for (Elem b : out.basis) {
    std::vector<Elem> next;
    next.reserve(span.size() * scalars.size());
    for (Elem s : scalars) {
      const Elem sb = f.mul(s, b);
      for (Elem x : span) next.push_back(f.add(x, sb));
    }
    span = std::move(next);
  }
  std::sort(span.begin(), span.end());
  out.elements = std::move(span);
  return out;
}

}  // namespace lrc::galois
