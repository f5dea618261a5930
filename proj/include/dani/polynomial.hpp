#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dani/field.hpp"

namespace dani {

/// Ordered list of variable names. Variables flagged invertible may carry
/// negative exponents (Laurent variables).
class Universe {
public:
    static std::shared_ptr<const Universe> make(std::vector<std::string> names,
                                                std::vector<bool> invertible = {});

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    bool invertible(std::size_t i) const { return invertible_[i]; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    /// New universe with extra (non-invertible) variables appended.
    std::shared_ptr<const Universe> extended(const std::vector<std::string>& extra) const;

    bool same_content(const Universe& o) const {
        return names_ == o.names_ && invertible_ == o.invertible_;
    }

private:
    std::vector<std::string> names_;
    std::vector<bool> invertible_;
};

/// Exponent vector aligned with a Universe.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}

    std::size_t size() const { return e_.size(); }
    std::int32_t operator[](std::size_t i) const { return e_[i]; }
    std::int32_t& operator[](std::size_t i) { return e_[i]; }

    std::int64_t total_degree() const;
    bool is_constant() const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const; // componentwise <=
    Monomial divided_by(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
    std::vector<std::int32_t> e_;
};

/// Graded-lexicographic order on monomials; used for deterministic term
/// iteration and canonical printing.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial;

namespace kernels {

using TermMap = std::map<Monomial, FieldElem, GrlexLess>;

/// Serial reference multiplication kernel.
TermMap mul_serial(const TermMap& a, const TermMap& b);

/// OpenMP kernel: partitions the left factor across threads, accumulates
/// into thread-local maps and merges. Result is identical to mul_serial.
TermMap mul_openmp(const TermMap& a, const TermMap& b);

/// Dispatches to mul_openmp when the term-pair count reaches the cutoff.
TermMap mul_auto(const TermMap& a, const TermMap& b);

/// Term-pair count at which mul_auto goes parallel (tunable for benchmarks).
std::size_t& parallel_pair_cutoff();

} // namespace kernels

/// Immutable sparse multivariate polynomial with exact coefficients.
/// No zero coefficients are stored; terms iterate in graded-lex order.
class Polynomial {
public:
    using TermMap = kernels::TermMap;

    Polynomial() = default;
    Polynomial(FieldSpec field, std::shared_ptr<const Universe> uni)
        : field_(field), uni_(std::move(uni)) {}

    static Polynomial zero(FieldSpec f, std::shared_ptr<const Universe> u) { return {f, std::move(u)}; }
    static Polynomial constant(FieldSpec f, std::shared_ptr<const Universe> u, const FieldElem& c);
    static Polynomial constant(FieldSpec f, std::shared_ptr<const Universe> u, long long c);
    static Polynomial variable(FieldSpec f, std::shared_ptr<const Universe> u, std::string_view name);
    static Polynomial from_monomial(FieldSpec f, std::shared_ptr<const Universe> u,
                                    Monomial m, FieldElem c);

    const FieldSpec& field() const { return field_; }
    const std::shared_ptr<const Universe>& universe() const { return uni_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_constant() const;
    /// The coefficient of the constant monomial (zero if absent).
    FieldElem constant_term() const;

    /// Accumulates c * m into this polynomial (dropping the term if the sum
    /// cancels). The monomial must match the universe arity.
    void add_term(const Monomial& m, const FieldElem& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const FieldElem& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Formal derivative in the named variable: sum i*c_i x^{i-1}, with the
    /// integer multiplications taken in the coefficient field.
    Polynomial derivative(std::string_view var) const;

    /// Largest exponent of the variable (0 for the zero polynomial).
    std::int32_t degree_in(std::size_t var_idx) const;
    /// Coefficient of var^e as a polynomial over the same universe.
    Polynomial coeff_of(std::size_t var_idx, std::int32_t e) const;
    bool contains_var(std::size_t var_idx) const;

    /// Applies a substitution homomorphism. Every variable either has an
    /// image (over `target`) or must exist in `target` under the same name.
    Polynomial substitute(const std::map<std::string, Polynomial>& images,
                          const std::shared_ptr<const Universe>& target) const;
    /// Substitution into the same universe.
    Polynomial substitute(const std::map<std::string, Polynomial>& images) const;

    /// Re-expresses this polynomial over another universe (matching variable
    /// names; throws if a used variable is missing in the target).
    Polynomial into(const std::shared_ptr<const Universe>& target) const;

    /// Max over terms of the weight dot product; nullopt for 0 (degree -inf).
    /// Weights must be declared for every variable that actually occurs.
    std::optional<std::int64_t> weighted_degree(
        const std::vector<std::optional<std::int64_t>>& weights) const;

    /// Sum of the terms attaining the weighted degree (0 for 0).
    Polynomial top_form(const std::vector<std::optional<std::int64_t>>& weights) const;

    /// Exact division by a monomial; nullopt if any term is not divisible.
    std::optional<Polynomial> divide_exact_monomial(const Monomial& m) const;

    /// Exact division by an arbitrary nonzero polynomial via leading-term
    /// elimination; nullopt when the division is not exact.
    std::optional<Polynomial> divide_exact(const Polynomial& g) const;

    /// Canonical text form (descending graded-lex).
    std::string str() const;

private:
    FieldSpec field_{};
    std::shared_ptr<const Universe> uni_;
    TermMap terms_;

    void check_compatible(const Polynomial& o) const;
};

inline Polynomial operator*(const FieldElem& c, const Polynomial& p) { return p * c; }

} // namespace dani
