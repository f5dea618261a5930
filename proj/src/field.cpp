#include "dani/field.hpp"

namespace dani {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

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

// Extended Euclid inverse of a mod m, a != 0 mod m.
u64 invmod(u64 a, u64 m) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw Error("element not invertible mod p");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<u64>(t);
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime_field(u64 p) {
    if (!is_prime_u64(p)) throw ConfigError("characteristic " + std::to_string(p) + " is not prime");
    FieldSpec s;
    s.kind = Kind::prime_field;
    s.characteristic = p;
    return s;
}

std::string FieldSpec::str() const {
    if (kind == Kind::rationals) return "Q";
    return "Fp " + std::to_string(characteristic);
}

FieldSpec FieldSpec::parse(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    }
    if (t == "Q" || t == "q") return rationals();
    if (t.rfind("Fp", 0) == 0 || t.rfind("fp", 0) == 0 || t.rfind("FP", 0) == 0) {
        std::string rest = t.substr(2);
        if (!rest.empty() && (rest[0] == ':' || rest[0] == '=')) rest = rest.substr(1);
        if (rest.empty()) throw ConfigError("field: missing prime after Fp");
        for (char c : rest) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ConfigError("field: bad prime '" + rest + "'");
        }
        return prime_field(std::stoull(rest));
    }
    throw ConfigError("field: expected Q or Fp <p>, got '" + text + "'");
}

FieldElem FieldElem::zero(const FieldSpec& spec) {
    FieldElem e;
    e.spec_ = spec;
    return e;
}

FieldElem FieldElem::one(const FieldSpec& spec) { return from_int(spec, 1); }

FieldElem FieldElem::from_int(const FieldSpec& spec, long long v) {
    FieldElem e;
    e.spec_ = spec;
    if (spec.kind == FieldSpec::Kind::rationals) {
        e.rat_ = mpq_class(static_cast<long>(v));
    } else {
        long long p = static_cast<long long>(spec.characteristic);
        long long r = v % p;
        if (r < 0) r += p;
        e.res_ = static_cast<u64>(r);
    }
    return e;
}

FieldElem FieldElem::from_mpz(const FieldSpec& spec, const mpz_class& v) {
    FieldElem e;
    e.spec_ = spec;
    if (spec.kind == FieldSpec::Kind::rationals) {
        e.rat_ = mpq_class(v);
    } else {
        mpz_class p(static_cast<unsigned long>(spec.characteristic));
        mpz_class r = v % p;
        if (r < 0) r += p;
        e.res_ = r.get_ui();
    }
    return e;
}

FieldElem FieldElem::from_ratio(const FieldSpec& spec, const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error("zero denominator");
    if (spec.kind == FieldSpec::Kind::rationals) {
        FieldElem e;
        e.spec_ = spec;
        e.rat_ = mpq_class(num, den);
        e.rat_.canonicalize();
        return e;
    }
    FieldElem n = from_mpz(spec, num);
    FieldElem d = from_mpz(spec, den);
    return n / d;
}

bool FieldElem::is_zero() const {
    return spec_.kind == FieldSpec::Kind::rationals ? rat_ == 0 : res_ == 0;
}

bool FieldElem::is_one() const {
    return spec_.kind == FieldSpec::Kind::rationals ? rat_ == 1 : res_ == 1;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same(o);
    FieldElem e;
    e.spec_ = spec_;
    if (spec_.kind == FieldSpec::Kind::rationals) {
        e.rat_ = rat_ + o.rat_;
    } else {
        u64 p = spec_.characteristic;
        u64 s = res_ + o.res_; // p < 2^63 so no overflow
        e.res_ = s >= p ? s - p : s;
    }
    return e;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same(o);
    FieldElem e;
    e.spec_ = spec_;
    if (spec_.kind == FieldSpec::Kind::rationals) {
        e.rat_ = rat_ - o.rat_;
    } else {
        u64 p = spec_.characteristic;
        e.res_ = res_ >= o.res_ ? res_ - o.res_ : res_ + p - o.res_;
    }
    return e;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same(o);
    FieldElem e;
    e.spec_ = spec_;
    if (spec_.kind == FieldSpec::Kind::rationals) {
        e.rat_ = rat_ * o.rat_;
    } else {
        e.res_ = mulmod(res_, o.res_, spec_.characteristic);
    }
    return e;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw Error("division by zero");
    FieldElem e;
    e.spec_ = spec_;
    if (spec_.kind == FieldSpec::Kind::rationals) {
        e.rat_ = 1 / rat_;
    } else {
        e.res_ = invmod(res_, spec_.characteristic);
    }
    return e;
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    check_same(o);
    if (o.is_zero()) throw Error("division by zero");
    if (spec_.kind == FieldSpec::Kind::rationals) {
        FieldElem e;
        e.spec_ = spec_;
        e.rat_ = rat_ / o.rat_;
        return e;
    }
    return *this * o.inverse();
}

FieldElem FieldElem::operator-() const {
    FieldElem e;
    e.spec_ = spec_;
    if (spec_.kind == FieldSpec::Kind::rationals) {
        e.rat_ = -rat_;
    } else if (res_ != 0) {
        e.res_ = spec_.characteristic - res_;
    }
    return e;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (spec_ != o.spec_) return false;
    return spec_.kind == FieldSpec::Kind::rationals ? rat_ == o.rat_ : res_ == o.res_;
}

bool FieldElem::is_negative() const {
    return spec_.kind == FieldSpec::Kind::rationals && rat_ < 0;
}

FieldElem FieldElem::abs() const { return is_negative() ? -*this : *this; }

std::string FieldElem::str() const {
    if (spec_.kind == FieldSpec::Kind::rationals) return rat_.get_str();
    return std::to_string(res_);
}

} // namespace dani
