#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dani/errors.hpp"

namespace dani {

/// Coefficient domain: the rationals or a prime field F_p.
struct FieldSpec {
    enum class Kind : std::uint8_t { rationals, prime_field };

    Kind kind = Kind::rationals;
    std::uint64_t characteristic = 0; // 0 for Q, p for F_p

    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec prime_field(std::uint64_t p);

    bool operator==(const FieldSpec&) const = default;

    std::string str() const;

    /// Parses "Q", "Fp 5" or "Fp:5".
    static FieldSpec parse(const std::string& text);
};

bool is_prime_u64(std::uint64_t n);

/// An exact field element. Rationals are reduced GMP fractions, prime-field
/// values are least nonnegative residues. All operations are exact.
class FieldElem {
public:
    FieldElem() = default; // 0 over Q

    static FieldElem zero(const FieldSpec& spec);
    static FieldElem one(const FieldSpec& spec);
    static FieldElem from_int(const FieldSpec& spec, long long v);
    static FieldElem from_mpz(const FieldSpec& spec, const mpz_class& v);
    /// num/den with den != 0 (mod p the denominator must be invertible).
    static FieldElem from_ratio(const FieldSpec& spec, const mpz_class& num, const mpz_class& den);

    const FieldSpec& spec() const { return spec_; }

    bool is_zero() const;
    bool is_one() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    /// True for negative rationals; residues are never negative.
    bool is_negative() const;
    FieldElem abs() const;

    /// Canonical text: "3", "-1/2", "4".
    std::string str() const;

private:
    FieldSpec spec_{};
    mpq_class rat_{0};       // payload when kind == rationals
    std::uint64_t res_ = 0;  // payload when kind == prime_field

    void check_same(const FieldElem& o) const {
        if (spec_ != o.spec_) throw FieldMismatch();
    }
};

} // namespace dani
