#include "poisson/field.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace poisson {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::MalformedSpec: return "MalformedSpec";
    case ErrorCode::DIsSquare: return "DIsSquare";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::NotASubalgebra: return "NotASubalgebra";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::NotLie: return "NotLie";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
    case ErrorCode::NonCommutingFamily: return "NonCommutingFamily";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::JacobiFails: return "JacobiFails";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AxiomFailure: return "AxiomFailure";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

constexpr std::int64_t kMaxPrime = 2147483647;  // keeps residue products in int64

bool is_prime_i64(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return r;
}

mpq_class make_rat(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// a/b with both perfect squares gives the exact rational square root.
std::optional<mpq_class> sqrt_rational(const mpq_class& x) {
  if (sgn(x) < 0) return std::nullopt;
  const mpz_class num = x.get_num(), den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return make_rat(rn, rd);
}

mpq_class parse_rational_literal(const std::string& s) {
  auto bad = [&] { fail(ErrorCode::Malformed, "bad rational literal '" + s + "'"); };
  if (s.empty()) bad();
  std::size_t slash = s.find('/');
  std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  auto check_int = [&](const std::string& t, bool allow_sign) {
    if (t.empty()) bad();
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) bad();
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) bad();
  };
  check_int(num, true);
  check_int(den, false);
  mpz_class n(num), d(den);
  if (d == 0) bad();
  return make_rat(n, d);
}

}  // namespace

bool euler_is_square_mod(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0 || p == 2) return true;
  return pow_mod(a, (p - 1) / 2, p) == 1;
}

// ---------------------------------------------------------------------------
// Field construction / interning

const Field* Field::rationals() {
  static Field q;
  q.kind_ = FieldKind::Rationals;
  return &q;
}

const Field* Field::prime(std::int64_t p) {
  if (p > kMaxPrime) fail(ErrorCode::BadParams, "modulus too large");
  if (!is_prime_i64(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<Field>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = table[p];
  if (!slot) {
    slot.reset(new Field());
    slot->kind_ = FieldKind::Prime;
    slot->char_ = p;
    slot->p_ = p;
  }
  return slot.get();
}

const Field* Field::quadratic(const Field* base, const Fel& d) {
  if (base->kind_ == FieldKind::Quadratic)
    fail(ErrorCode::BadParams, "quadratic towers are not supported");
  if (d.field() != base) fail(ErrorCode::FieldMismatch, "d must live in the base field");
  if (d.is_zero()) fail(ErrorCode::BadParams, "d must be nonzero");
  if (base->is_square(d))
    fail(ErrorCode::DIsSquare, "d = " + base->emit_elem(d) + " is a square in " + base->descriptor());
  static std::mutex mu;
  static std::map<std::pair<const Field*, std::string>, std::unique_ptr<Field>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = table[{base, base->emit_elem(d)}];
  if (!slot) {
    slot.reset(new Field());
    slot->kind_ = FieldKind::Quadratic;
    slot->base_ = base;
    slot->char_ = base->char_;
    slot->p_ = base->p_;
    if (base->kind_ == FieldKind::Prime)
      slot->dz_ = d.za_;
    else
      slot->dq_ = d.qa_;
  }
  return slot.get();
}

const Field* Field::parse(const std::string& s) {
  if (s == "q") return rationals();
  auto parse_int = [&](const std::string& t) -> std::int64_t {
    try {
      std::size_t pos = 0;
      std::int64_t v = std::stoll(t, &pos);
      if (pos != t.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::MalformedSpec, "bad integer '" + t + "' in field descriptor");
    }
  };
  if (s.rfind("fp:", 0) == 0) return prime(parse_int(s.substr(3)));
  if (s.rfind("qext:", 0) == 0) {
    std::string rest = s.substr(5);
    if (rest.rfind("q:", 0) == 0) {
      const Field* b = rationals();
      return quadratic(b, b->parse_elem(rest.substr(2)));
    }
    if (rest.rfind("fp:", 0) == 0) {
      std::string t = rest.substr(3);
      std::size_t colon = t.find(':');
      if (colon == std::string::npos)
        fail(ErrorCode::MalformedSpec, "qext:fp:<p>:<d> expected in '" + s + "'");
      const Field* b = prime(parse_int(t.substr(0, colon)));
      return quadratic(b, b->parse_elem(t.substr(colon + 1)));
    }
  }
  fail(ErrorCode::MalformedSpec, "unrecognized field descriptor '" + s + "'");
}

std::string Field::descriptor() const {
  switch (kind_) {
    case FieldKind::Rationals: return "q";
    case FieldKind::Prime: return "fp:" + std::to_string(p_);
    case FieldKind::Quadratic: return "qext:" + base_->descriptor() + ":" + base_->emit_elem(adjoined_square());
  }
  return "?";
}

mpz_class Field::cardinality() const {
  if (!finite()) fail(ErrorCode::InfiniteField, "field " + descriptor() + " is infinite");
  mpz_class p(static_cast<long>(p_));
  return kind_ == FieldKind::Prime ? p : p * p;
}

Fel Field::adjoined_square() const {
  if (kind_ != FieldKind::Quadratic) fail(ErrorCode::Internal, "adjoined_square on non-quadratic field");
  if (base_->kind_ == FieldKind::Prime) return base_->from_int(dz_);
  return base_->from_mpq(dq_);
}

std::int64_t Field::reduce(std::int64_t v) const {
  v %= p_;
  return v < 0 ? v + p_ : v;
}

std::int64_t Field::inv_mod(std::int64_t a) const {
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) fail(ErrorCode::Internal, "non-invertible residue");
  return t < 0 ? t + p_ : t;
}

// ---------------------------------------------------------------------------
// Element construction

Fel Field::zero() const { return Fel(this); }

Fel Field::one() const { return from_int(1); }

Fel Field::from_int(std::int64_t n) const {
  Fel x(this);
  if (char_ != 0)
    x.za_ = reduce(n);
  else
    x.qa_ = mpq_class(static_cast<long>(n));
  return x;
}

Fel Field::from_mpq(const mpq_class& q) const {
  if (char_ != 0) {
    // map an integer-valued literal through the characteristic
    if (q.get_den() != 1) fail(ErrorCode::Malformed, "non-integer literal over finite field");
    Fel x(this);
    x.za_ = reduce(mpz_fdiv_ui(q.get_num().get_mpz_t(), static_cast<unsigned long>(p_)));
    return x;
  }
  Fel x(this);
  x.qa_ = q;
  x.qa_.canonicalize();
  return x;
}

Fel Field::make_ext(const Fel& a, const Fel& b) const {
  if (kind_ != FieldKind::Quadratic) fail(ErrorCode::Internal, "make_ext on non-quadratic field");
  if (a.field() != base_ || b.field() != base_) fail(ErrorCode::FieldMismatch, "components must be base-field elements");
  Fel x(this);
  if (char_ != 0) {
    x.za_ = a.za_;
    x.zb_ = b.za_;
  } else {
    x.qa_ = a.qa_;
    x.qb_ = b.qa_;
  }
  return x;
}

Fel Field::ext_a(const Fel& x) const {
  if (kind_ != FieldKind::Quadratic || x.field() != this) fail(ErrorCode::Internal, "ext_a misuse");
  return char_ != 0 ? base_->from_int(x.za_) : base_->from_mpq(x.qa_);
}

Fel Field::ext_b(const Fel& x) const {
  if (kind_ != FieldKind::Quadratic || x.field() != this) fail(ErrorCode::Internal, "ext_b misuse");
  return char_ != 0 ? base_->from_int(x.zb_) : base_->from_mpq(x.qb_);
}

std::int64_t Field::element_count() const {
  if (!finite()) fail(ErrorCode::InfiniteField, "cannot enumerate " + descriptor());
  return kind_ == FieldKind::Prime ? p_ : p_ * p_;
}

Fel Field::element_at(std::int64_t i) const {
  if (!finite()) fail(ErrorCode::InfiniteField, "cannot enumerate " + descriptor());
  Fel x(this);
  if (kind_ == FieldKind::Prime) {
    x.za_ = i;
  } else {
    x.za_ = i / p_;
    x.zb_ = i % p_;
  }
  return x;
}

std::int64_t Field::index_of(const Fel& x) const {
  if (!finite()) fail(ErrorCode::InfiniteField, "cannot enumerate " + descriptor());
  return kind_ == FieldKind::Prime ? x.za_ : x.za_ * p_ + x.zb_;
}

// ---------------------------------------------------------------------------
// Element arithmetic

namespace {
const Field* require_same(const Fel& x, const Fel& y) {
  if (x.field() == nullptr || x.field() != y.field())
    fail(ErrorCode::FieldMismatch, "elements of different fields");
  return x.field();
}
}  // namespace

bool Fel::is_zero() const {
  if (f_ == nullptr) fail(ErrorCode::Internal, "null element");
  if (f_->char_ != 0) return za_ == 0 && zb_ == 0;
  return qa_ == 0 && qb_ == 0;
}

bool Fel::is_one() const { return *this == f_->one(); }

bool Fel::operator==(const Fel& o) const {
  require_same(*this, o);
  if (f_->char_ != 0) return za_ == o.za_ && zb_ == o.zb_;
  return qa_ == o.qa_ && qb_ == o.qb_;
}

Fel Fel::operator+(const Fel& o) const {
  const Field* f = require_same(*this, o);
  Fel r(f);
  if (f->char_ != 0) {
    r.za_ = f->reduce(za_ + o.za_);
    r.zb_ = f->reduce(zb_ + o.zb_);
  } else {
    r.qa_ = qa_ + o.qa_;
    r.qb_ = qb_ + o.qb_;
  }
  return r;
}

Fel Fel::operator-(const Fel& o) const {
  const Field* f = require_same(*this, o);
  Fel r(f);
  if (f->char_ != 0) {
    r.za_ = f->reduce(za_ - o.za_);
    r.zb_ = f->reduce(zb_ - o.zb_);
  } else {
    r.qa_ = qa_ - o.qa_;
    r.qb_ = qb_ - o.qb_;
  }
  return r;
}

Fel Fel::operator-() const {
  if (f_ == nullptr) fail(ErrorCode::Internal, "null element");
  Fel r(f_);
  if (f_->char_ != 0) {
    r.za_ = f_->reduce(-za_);
    r.zb_ = f_->reduce(-zb_);
  } else {
    r.qa_ = -qa_;
    r.qb_ = -qb_;
  }
  return r;
}

Fel Fel::operator*(const Fel& o) const {
  const Field* f = require_same(*this, o);
  Fel r(f);
  if (f->kind_ == FieldKind::Prime) {
    r.za_ = (za_ * o.za_) % f->p_;
  } else if (f->kind_ == FieldKind::Rationals) {
    r.qa_ = qa_ * o.qa_;
  } else if (f->char_ != 0) {
    // (a + b s)(a' + b' s) = (aa' + d bb') + (ab' + a'b) s
    r.za_ = f->reduce(za_ * o.za_ % f->p_ + f->dz_ * (zb_ * o.zb_ % f->p_) % f->p_);
    r.zb_ = f->reduce(za_ * o.zb_ % f->p_ + o.za_ * zb_ % f->p_);
  } else {
    r.qa_ = qa_ * o.qa_ + f->dq_ * qb_ * o.qb_;
    r.qb_ = qa_ * o.qb_ + o.qa_ * qb_;
  }
  return r;
}

Fel Fel::inverse() const {
  if (is_zero()) fail(ErrorCode::Internal, "inverse of zero");
  const Field* f = f_;
  Fel r(f);
  switch (f->kind_) {
    case FieldKind::Prime:
      r.za_ = f->inv_mod(za_);
      break;
    case FieldKind::Rationals:
      r.qa_ = make_rat(qa_.get_den(), qa_.get_num());
      break;
    case FieldKind::Quadratic: {
      // conjugate over norm; the norm a^2 - d b^2 is nonzero since d is a non-square
      Fel n = *this * conj();
      Fel ninv(f);
      if (f->char_ != 0) {
        std::int64_t inv = f->inv_mod(n.za_);
        r.za_ = (za_ * inv) % f->p_;
        r.zb_ = f->reduce(-(zb_ * inv) % f->p_);
      } else {
        mpq_class inv = make_rat(n.qa_.get_den(), n.qa_.get_num());
        r.qa_ = qa_ * inv;
        r.qb_ = -qb_ * inv;
      }
      break;
    }
  }
  return r;
}

Fel Fel::operator/(const Fel& o) const { return *this * o.inverse(); }

Fel Fel::pow(long long e) const {
  if (f_ == nullptr) fail(ErrorCode::Internal, "null element");
  Fel b = e < 0 ? inverse() : *this;
  if (e < 0) e = -e;
  Fel r = f_->one();
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Fel Fel::conj() const {
  if (f_ == nullptr) fail(ErrorCode::Internal, "null element");
  if (f_->kind_ != FieldKind::Quadratic) return *this;
  Fel r(f_);
  if (f_->char_ != 0) {
    r.za_ = za_;
    r.zb_ = f_->reduce(-zb_);
  } else {
    r.qa_ = qa_;
    r.qb_ = -qb_;
  }
  return r;
}

bool Fel::less(const Fel& x, const Fel& y) {
  const Field* f = require_same(x, y);
  if (f->char_ != 0) {
    if (x.za_ != y.za_) return x.za_ < y.za_;
    return x.zb_ < y.zb_;
  }
  int c = cmp(x.qa_, y.qa_);
  if (c != 0) return c < 0;
  return cmp(x.qb_, y.qb_) < 0;
}

// ---------------------------------------------------------------------------
// Square roots

std::optional<Fel> Field::sqrt_of(const Fel& x) const {
  if (x.field() != this) fail(ErrorCode::FieldMismatch, "sqrt of foreign element");
  if (x.is_zero()) return zero();
  switch (kind_) {
    case FieldKind::Prime: {
      if (!euler_is_square_mod(x.za_, p_)) return std::nullopt;
      if (p_ == 2) return x;
      if (p_ % 4 == 3) {
        Fel r = from_int(pow_mod(x.za_, (p_ + 1) / 4, p_));
        return r;
      }
      // p = 1 (mod 4): direct search; catalog primes are tiny
      if (p_ > 1000000) fail(ErrorCode::Internal, "sqrt search too large");
      for (std::int64_t t = 1; t < p_; ++t)
        if ((t * t) % p_ == x.za_) return from_int(t);
      return std::nullopt;
    }
    case FieldKind::Rationals: {
      auto r = sqrt_rational(x.qa_);
      if (!r) return std::nullopt;
      return from_mpq(*r);
    }
    case FieldKind::Quadratic: {
      const Fel a = ext_a(x), b = ext_b(x);
      if (b.is_zero()) {
        if (auto r = base_->sqrt_of(a)) return make_ext(*r, base_->zero());
        // x may still be the square of a pure multiple of sqrt(d)
        if (auto r = base_->sqrt_of(a / adjoined_square())) return make_ext(base_->zero(), *r);
        return std::nullopt;
      }
      if (char_ == 2) return std::nullopt;  // unreachable: no quadratic extension of GF(2)
      // (u + v s)^2 = x: u^2 + d v^2 = a, 2uv = b. Solve u^2 from the norm.
      const Fel d = adjoined_square();
      auto norm_root = base_->sqrt_of(a * a - d * b * b);
      if (!norm_root) return std::nullopt;
      const Fel two = base_->from_int(2);
      for (int sign = 0; sign < 2; ++sign) {
        Fel t = (sign == 0) ? (a + *norm_root) / two : (a - *norm_root) / two;
        if (auto u = base_->sqrt_of(t)) {
          if (!u->is_zero()) {
            Fel v = b / (two * *u);
            Fel cand = make_ext(*u, v);
            if (cand * cand == x) return cand;
          }
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Literals

std::string Field::emit_elem(const Fel& x) const {
  if (x.field() != this) fail(ErrorCode::FieldMismatch, "emit of foreign element");
  auto rat_str = [](const mpq_class& q) {
    std::ostringstream os;
    if (q.get_den() == 1)
      os << q.get_num();
    else
      os << q.get_num() << "/" << q.get_den();
    return os.str();
  };
  switch (kind_) {
    case FieldKind::Prime:
      return std::to_string(x.za_);
    case FieldKind::Rationals:
      return rat_str(x.qa_);
    case FieldKind::Quadratic: {
      const Fel a = ext_a(x), b = ext_b(x);
      if (b.is_zero()) return base_->emit_elem(a);
      if (char_ != 0) return base_->emit_elem(a) + "+" + base_->emit_elem(b) + "*s";
      if (sgn(x.qb_) > 0) return rat_str(x.qa_) + "+" + rat_str(x.qb_) + "*s";
      return rat_str(x.qa_) + "-" + rat_str(-x.qb_) + "*s";
    }
  }
  return "?";
}

Fel Field::parse_elem(const std::string& text) const {
  std::string s = text;
  if (s.empty()) fail(ErrorCode::Malformed, "empty element literal");
  if (kind_ == FieldKind::Prime) {
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail(ErrorCode::Malformed, "bad residue literal '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        fail(ErrorCode::Malformed, "bad residue literal '" + s + "'");
    return from_mpq(mpq_class(mpz_class(s)));
  }
  if (kind_ == FieldKind::Rationals) return from_mpq(parse_rational_literal(s));
  // quadratic: "<A>" or "<A>(+|-)<B>*s"
  std::size_t star = s.rfind("*s");
  if (star == std::string::npos || star + 2 != s.size()) {
    return make_ext(base_->parse_elem(s), base_->zero());
  }
  // the sign splitting A from B is the last +/- preceded by a digit
  std::size_t split = std::string::npos;
  for (std::size_t i = star; i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && std::isdigit(static_cast<unsigned char>(s[i - 1]))) {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) fail(ErrorCode::Malformed, "bad extension literal '" + s + "'");
  Fel a = base_->parse_elem(s.substr(0, split));
  Fel b = base_->parse_elem(s.substr(split + 1, star - split - 1));
  if (s[split] == '-') b = -b;
  return make_ext(a, b);
}

std::string Fel::str() const {
  if (f_ == nullptr) return "<null>";
  return f_->emit_elem(*this);
}

}  // namespace poisson
