#include "a1lab/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace a1lab {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Saturating p^r; returns 0 on overflow of 2^63.
u64 checked_power(u64 p, int r) {
  u64 q = 1;
  for (int i = 0; i < r; ++i) {
    if (q > (u64{1} << 63) / p) return 0;
    q *= p;
  }
  return q;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over F_p, coefficients low to high, trimmed.
using ModPoly = std::vector<u64>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly poly_mod(ModPoly a, const ModPoly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_mod(std::move(c), m, p);
}

ModPoly poly_powmod(ModPoly base, u64 e, const ModPoly& m, u64 p) {
  ModPoly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^e) mod m by repeated p-th powering.
ModPoly frobenius_power_of_x(const ModPoly& m, u64 p, int e) {
  ModPoly x{0, 1};
  ModPoly cur = poly_mod(x, m, p);
  for (int i = 0; i < e; ++i) cur = poly_powmod(cur, p, m, p);
  return cur;
}

ModPoly sub_x(ModPoly a, u64 p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
  return FieldSpec{FieldKind::prime, p, 1, {}};
}

std::string FieldSpec::name() const {
  switch (kind) {
    case FieldKind::rationals:
      return "Q";
    case FieldKind::prime:
      return "F_" + std::to_string(p);
    case FieldKind::extension:
      return "F_" + std::to_string(p) + "^" + std::to_string(r);
  }
  return "?";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_irreducible_mod_p(std::span<const std::uint64_t> monic, std::uint64_t p) {
  ModPoly m(monic.begin(), monic.end());
  trim(m);
  if (m.size() < 2 || m.back() != 1) return false;
  const int r = static_cast<int>(m.size()) - 1;
  if (r == 1) return true;
  // x^(p^r) == x (mod m) and gcd(x^(p^(r/l)) - x, m) == 1 for primes l | r.
  if (!sub_x(frobenius_power_of_x(m, p, r), p).empty()) return false;
  for (u64 l : prime_factors(static_cast<u64>(r))) {
    ModPoly g = poly_gcd(m, sub_x(frobenius_power_of_x(m, p, r / static_cast<int>(l)), p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

FieldSpec make_extension(std::uint64_t p, int r) {
  if (r < 1 || r > 4) throw UnsupportedError("extension degree must lie in [1, 4], got " + std::to_string(r));
  if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
  if (r == 1) return FieldSpec::prime(p);
  if (checked_power(p, r) == 0) throw UnsupportedError("field size p^r exceeds 2^63");
  // Monic candidates x^r + c_{r-1} x^{r-1} + ... + c_0 in increasing order of sum c_i p^i.
  std::vector<u64> coeffs(static_cast<std::size_t>(r) + 1, 0);
  coeffs[static_cast<std::size_t>(r)] = 1;
  while (true) {
    if (is_irreducible_mod_p(coeffs, p)) return FieldSpec{FieldKind::extension, p, r, coeffs};
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(r) && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == static_cast<std::size_t>(r)) break;
  }
  throw ConsistencyError("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

const GaloisField& GaloisField::get(const FieldSpec& spec) {
  static std::mutex mutex;
  static std::map<std::pair<u64, std::vector<u64>>, std::unique_ptr<GaloisField>> interned;
  if (!spec.is_finite()) throw InputError("the rationals have no finite-field descriptor");
  FieldSpec canonical = spec;
  if (canonical.r == 1) {
    canonical.kind = FieldKind::prime;
    canonical.modulus.clear();
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(canonical.p, canonical.r == 1 ? std::vector<u64>{} : canonical.modulus);
  auto it = interned.find(key);
  if (it == interned.end()) {
    it = interned.emplace(std::move(key), std::make_unique<GaloisField>(canonical)).first;
  }
  return *it->second;
}

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.p)) throw InputError("not a prime: " + std::to_string(spec_.p));
  if (spec_.r < 1 || spec_.r > 4) throw UnsupportedError("extension degree must lie in [1, 4]");
  if (spec_.r > 1) {
    if (spec_.modulus.size() != static_cast<std::size_t>(spec_.r) + 1 || spec_.modulus.back() != 1)
      throw InputError("extension modulus must be monic of degree r");
    for (u64 c : spec_.modulus)
      if (c >= spec_.p) throw InputError("modulus coefficient out of range");
    if (!is_irreducible_mod_p(spec_.modulus, spec_.p)) throw InputError("extension modulus is reducible");
  }
  q_ = checked_power(spec_.p, spec_.r);
  if (q_ == 0) throw UnsupportedError("field size p^r exceeds 2^63");
  order_ = q_ - 1;
  if (q_ <= (u64{1} << 20)) build_tables();
}

const GaloisField& GaloisField::prime_field() const { return is_prime_field() ? *this : get(FieldSpec::prime(p())); }

std::vector<u64> GaloisField::unpack(u64 packed) const {
  std::vector<u64> d(static_cast<std::size_t>(spec_.r));
  for (auto& c : d) {
    c = packed % spec_.p;
    packed /= spec_.p;
  }
  return d;
}

u64 GaloisField::pack(std::span<const u64> digits) const {
  u64 v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * spec_.p + digits[i];
  return v;
}

std::vector<u64> GaloisField::mul_digits(std::span<const u64> a, std::span<const u64> b) const {
  ModPoly pa(a.begin(), a.end()), pb(b.begin(), b.end());
  trim(pa);
  trim(pb);
  ModPoly m = spec_.r == 1 ? ModPoly{0, 1} : ModPoly(spec_.modulus.begin(), spec_.modulus.end());
  ModPoly c = poly_mulmod(pa, pb, m, spec_.p);
  c.resize(static_cast<std::size_t>(spec_.r), 0);
  return c;
}

void GaloisField::build_tables() {
  const u64 p = spec_.p;
  const auto r = static_cast<std::size_t>(spec_.r);
  // Find a primitive element by scanning residue indices.
  const std::vector<u64> factors = prime_factors(order_);
  auto digits_pow = [&](std::vector<u64> base, u64 e) {
    std::vector<u64> acc(r, 0);
    acc[0] = 1 % p;
    while (e) {
      if (e & 1) acc = mul_digits(acc, base);
      base = mul_digits(base, base);
      e >>= 1;
    }
    return acc;
  };
  std::vector<u64> one_digits(r, 0);
  one_digits[0] = 1 % p;
  std::vector<u64> generator;
  for (u64 idx = 1; idx < q_; ++idx) {
    std::vector<u64> cand = unpack(idx);
    bool primitive = true;
    for (u64 f : factors) {
      if (digits_pow(cand, order_ / f) == one_digits) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = std::move(cand);
      break;
    }
  }
  if (generator.empty()) {
    // q == 2: the only unit is 1.
    generator = one_digits;
  }
  raw_to_index_.assign(q_, 0);
  index_to_raw_.assign(q_, 0);
  std::vector<u64> cur = one_digits;
  for (u64 i = 0; i < order_; ++i) {
    const u64 idx = pack(cur);
    raw_to_index_[i + 1] = static_cast<std::uint32_t>(idx);
    index_to_raw_[idx] = static_cast<std::uint32_t>(i + 1);
    cur = mul_digits(cur, generator);
  }
  zech_.assign(order_, kNoLog);
  for (u64 d = 0; d < order_; ++d) {
    std::vector<u64> v = unpack(raw_to_index_[d + 1]);
    v[0] = (v[0] + 1) % p;
    const u64 raw = index_to_raw_[pack(v)];
    zech_[d] = raw == 0 ? kNoLog : static_cast<std::uint32_t>(raw - 1);
  }
  one_ = 1;
  neg_shift_ = (p == 2) ? 0 : order_ / 2;
  tabled_ = true;
}

u64 GaloisField::add_direct(u64 a, u64 b) const {
  const u64 p = spec_.p;
  if (spec_.r == 1) {
    const u64 s = a + b;  // p < 2^63
    return s >= p ? s - p : s;
  }
  u64 out = 0, scale = 1;
  for (int i = 0; i < spec_.r; ++i) {
    u64 s = a % p + b % p;
    if (s >= p) s -= p;
    out += s * scale;
    scale *= p;
    a /= p;
    b /= p;
  }
  return out;
}

u64 GaloisField::neg_direct(u64 a) const {
  const u64 p = spec_.p;
  if (spec_.r == 1) return a == 0 ? 0 : p - a;
  u64 out = 0, scale = 1;
  for (int i = 0; i < spec_.r; ++i) {
    const u64 c = a % p;
    out += (c == 0 ? 0 : p - c) * scale;
    scale *= p;
    a /= p;
  }
  return out;
}

u64 GaloisField::mul_direct(u64 a, u64 b) const {
  if (spec_.r == 1) return mulmod(a, b, spec_.p);
  const auto da = unpack(a), db = unpack(b);
  return pack(mul_digits(da, db));
}

u64 GaloisField::pow(u64 a, u64 e) const {
  u64 r = one_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 GaloisField::inv(u64 a) const {
  if (a == 0) throw InputError("division by zero in " + spec_.name());
  if (tabled_) return a == 1 ? 1 : (order_ - (a - 1)) + 1;
  return pow(a, q_ - 2);
}

u64 GaloisField::from_int_raw(long long n) const {
  const auto p = static_cast<long long>(spec_.p > static_cast<u64>(INT64_MAX) ? 0 : spec_.p);
  u64 c;
  if (p == 0) {
    c = n >= 0 ? static_cast<u64>(n) % spec_.p : (spec_.p - (static_cast<u64>(-(n + 1)) + 1) % spec_.p) % spec_.p;
  } else {
    long long m = n % p;
    if (m < 0) m += p;
    c = static_cast<u64>(m);
  }
  if (tabled_) return index_to_raw_[c];
  return c;
}

u64 GaloisField::from_residues_raw(std::span<const u64> digits) const {
  if (digits.size() != static_cast<std::size_t>(spec_.r))
    throw InputError("expected " + std::to_string(spec_.r) + " residues for " + spec_.name());
  for (u64 c : digits)
    if (c >= spec_.p) throw InputError("residue out of range for " + spec_.name());
  const u64 idx = pack(digits);
  return tabled_ ? index_to_raw_[idx] : idx;
}

u64 GaloisField::residue_index(u64 raw) const { return tabled_ ? raw_to_index_[raw] : raw; }

std::vector<u64> GaloisField::residues(u64 raw) const { return unpack(residue_index(raw)); }

Gf GaloisField::zero() const { return Gf(*this, 0); }
Gf GaloisField::one() const { return Gf(*this, one_); }
Gf GaloisField::from_int(long long n) const { return Gf(*this, from_int_raw(n)); }
Gf GaloisField::element(u64 raw) const {
  if (raw >= q_) throw InputError("raw element out of range");
  return Gf(*this, raw);
}
Gf GaloisField::from_residues(std::span<const u64> digits) const { return Gf(*this, from_residues_raw(digits)); }

Gf GaloisField::embed(const Gf& x) const {
  if (x.field() == this) return x;
  if (x.field() == nullptr) return from_int(static_cast<long long>(x.raw()));
  if (x.field()->p() != p() || !x.field()->is_prime_field())
    throw InputError("cannot embed " + x.field()->spec().name() + " into " + spec_.name());
  return from_int(static_cast<long long>(x.field()->residue_index(x.raw())));
}

// ---------------------------------------------------------------------------

bool Gf::is_one() const { return field_ ? raw_ == field_->one_raw() : raw_ == 1; }

Gf Gf::mixed(const Gf& a, const Gf& b, char op) {
  const GaloisField* f = a.field_ ? a.field_ : b.field_;
  if (f == nullptr) {
    const auto x = static_cast<long long>(a.raw_), y = static_cast<long long>(b.raw_);
    switch (op) {
      case '+':
        return Gf(x + y);
      case '-':
        return Gf(x - y);
      default:
        return Gf(x * y);
    }
  }
  if (a.field_ && b.field_) {
    // Different fields: allow prime subfield elements to act on the extension.
    if (a.field_->q() >= b.field_->q()) f = a.field_;
    else f = b.field_;
  }
  const Gf x = f->embed(a), y = f->embed(b);
  switch (op) {
    case '+':
      return Gf(*f, f->add(x.raw_, y.raw_));
    case '-':
      return Gf(*f, f->sub(x.raw_, y.raw_));
    default:
      return Gf(*f, f->mul(x.raw_, y.raw_));
  }
}

bool operator==(const Gf& a, const Gf& b) {
  if (a.field_ == b.field_) return a.raw_ == b.raw_;
  const GaloisField* f = a.field_ ? a.field_ : b.field_;
  if (a.field_ && b.field_ && a.field_->q() < b.field_->q()) f = b.field_;
  return f->embed(a).raw_ == f->embed(b).raw_;
}

Gf Gf::inverse() const {
  if (!field_) {
    if (raw_ == 1) return Gf(1);
    if (raw_ == static_cast<std::uint64_t>(-1LL)) return Gf(-1);
    throw InputError("inverse of a field-less integer constant");
  }
  return Gf(*field_, field_->inv(raw_));
}

Gf Gf::pow(std::uint64_t e) const {
  if (!field_) throw InputError("power of a field-less integer constant");
  return Gf(*field_, field_->pow(raw_, e));
}

std::string Gf::to_string() const {
  if (!field_) return std::to_string(static_cast<long long>(raw_));
  const auto digits = field_->residues(raw_);
  if (digits.size() == 1) return std::to_string(digits[0]);
  std::ostringstream os;
  for (std::size_t i = 0; i < digits.size(); ++i) os << (i ? ":" : "") << digits[i];
  return os.str();
}

Gf like(const Gf& x, long long n) {
  if (x.field()) return x.field()->from_int(n);
  return Gf(n);
}

std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace a1lab
