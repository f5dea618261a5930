#include "dani/polynomial.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dani {

std::shared_ptr<const Universe> Universe::make(std::vector<std::string> names,
                                               std::vector<bool> invertible) {
    auto u = std::make_shared<Universe>();
    if (invertible.empty()) invertible.assign(names.size(), false);
    if (invertible.size() != names.size())
        throw Error("universe: invertibility flags do not match variable count");
    u->names_ = std::move(names);
    u->invertible_ = std::move(invertible);
    return u;
}

std::optional<std::size_t> Universe::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

std::shared_ptr<const Universe> Universe::extended(const std::vector<std::string>& extra) const {
    std::vector<std::string> names = names_;
    std::vector<bool> inv = invertible_;
    for (const auto& n : extra) {
        if (index_of(n)) throw Error("universe: duplicate variable " + n);
        names.push_back(n);
        inv.push_back(false);
    }
    return make(std::move(names), std::move(inv));
}

std::int64_t Monomial::total_degree() const {
    std::int64_t d = 0;
    for (auto e : e_) d += e;
    return d;
}

bool Monomial::is_constant() const {
    return std::all_of(e_.begin(), e_.end(), [](std::int32_t e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial m(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] += o.e_[i];
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] > o.e_[i]) return false;
    }
    return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    Monomial m(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] -= o.e_[i];
    return m;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    std::int64_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

namespace kernels {

namespace {

void accumulate(TermMap& out, const Monomial& m, const FieldElem& c) {
    auto [it, inserted] = out.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
    }
}

#ifdef _OPENMP
// Deterministic owner of a product monomial; threads keep disjoint key sets,
// so assembling the result moves map nodes without touching coefficients.
std::uint64_t owner_hash(const Monomial& x, const Monomial& y) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < x.size(); ++i) {
        h ^= static_cast<std::uint32_t>(x[i] + y[i]);
        h *= 0x100000001b3ull;
    }
    return h;
}
#endif

} // namespace

std::size_t& parallel_pair_cutoff() {
    static std::size_t cutoff = 4096;
    return cutoff;
}

TermMap mul_serial(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            accumulate(out, ma * mb, ca * cb);
        }
    }
    return out;
}

TermMap mul_openmp(const TermMap& a, const TermMap& b) {
#ifdef _OPENMP
    const unsigned nthreads = static_cast<unsigned>(omp_get_max_threads());
    if (nthreads <= 1) return mul_serial(a, b);
    std::vector<TermMap> partial(nthreads);

#pragma omp parallel num_threads(static_cast<int>(nthreads))
    {
        const unsigned me = static_cast<unsigned>(omp_get_thread_num());
        TermMap& local = partial[me];
        for (const auto& [ma, ca] : a) {
            for (const auto& [mb, cb] : b) {
                if (owner_hash(ma, mb) % nthreads != me) continue;
                accumulate(local, ma * mb, ca * cb);
            }
        }
    }

    // Buckets are key-disjoint: merging only relinks nodes.
    TermMap out;
    for (auto& p : partial) out.merge(p);
    return out;
#else
    return mul_serial(a, b);
#endif
}

TermMap mul_auto(const TermMap& a, const TermMap& b) {
#ifdef _OPENMP
    // Prime-field coefficients are allocation-free, so the parallel kernel
    // scales; rational coefficients allocate per operation and contend in
    // the allocator, so they stay on the serial kernel (see bench_kernels).
    if (!a.empty() && a.begin()->second.spec().kind == FieldSpec::Kind::prime_field &&
        a.size() * b.size() >= parallel_pair_cutoff() && omp_get_max_threads() > 1) {
        return mul_openmp(a, b);
    }
#endif
    return mul_serial(a, b);
}

} // namespace kernels

void Polynomial::check_compatible(const Polynomial& o) const {
    if (field_ != o.field_) throw FieldMismatch();
    if (uni_.get() == o.uni_.get()) return;
    if (!uni_ || !o.uni_ || !uni_->same_content(*o.uni_))
        throw Error("polynomial universes differ");
}

Polynomial Polynomial::constant(FieldSpec f, std::shared_ptr<const Universe> u, const FieldElem& c) {
    Polynomial p(f, std::move(u));
    if (!c.is_zero()) p.terms_.emplace(Monomial(p.uni_->size()), c);
    return p;
}

Polynomial Polynomial::constant(FieldSpec f, std::shared_ptr<const Universe> u, long long c) {
    return constant(f, u, FieldElem::from_int(f, c));
}

Polynomial Polynomial::variable(FieldSpec f, std::shared_ptr<const Universe> u, std::string_view name) {
    auto idx = u->index_of(name);
    if (!idx) throw UnknownVariable(std::string(name));
    Polynomial p(f, std::move(u));
    Monomial m(p.uni_->size());
    m[*idx] = 1;
    p.terms_.emplace(std::move(m), FieldElem::one(f));
    return p;
}

Polynomial Polynomial::from_monomial(FieldSpec f, std::shared_ptr<const Universe> u,
                                     Monomial m, FieldElem c) {
    Polynomial p(f, std::move(u));
    p.add_term(m, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

FieldElem Polynomial::constant_term() const {
    Monomial one(uni_->size());
    auto it = terms_.find(one);
    return it == terms_.end() ? FieldElem::zero(field_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const FieldElem& c) {
    if (c.is_zero()) return;
    if (m.size() != uni_->size()) throw Error("monomial arity mismatch");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial out(*this);
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial out(*this);
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial out(field_, uni_);
    out.terms_ = kernels::mul_auto(terms_, o.terms_);
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(field_, uni_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial Polynomial::operator*(const FieldElem& c) const {
    Polynomial out(field_, uni_);
    if (c.is_zero()) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc = constant(field_, uni_, 1);
    Polynomial base(*this);
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (field_ != o.field_) return false;
    if (uni_.get() != o.uni_.get() && !(uni_ && o.uni_ && uni_->same_content(*o.uni_)))
        return false;
    return terms_ == o.terms_;
}

Polynomial Polynomial::derivative(std::string_view var) const {
    auto idx = uni_->index_of(var);
    if (!idx) throw UnknownVariable(std::string(var));
    Polynomial out(field_, uni_);
    for (const auto& [m, c] : terms_) {
        std::int32_t e = m[*idx];
        if (e == 0) continue;
        Monomial dm(m);
        dm[*idx] = e - 1;
        out.add_term(dm, c * FieldElem::from_int(field_, e));
    }
    return out;
}

std::int32_t Polynomial::degree_in(std::size_t var_idx) const {
    std::int32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var_idx]);
    return d;
}

Polynomial Polynomial::coeff_of(std::size_t var_idx, std::int32_t e) const {
    Polynomial out(field_, uni_);
    for (const auto& [m, c] : terms_) {
        if (m[var_idx] != e) continue;
        Monomial n(m);
        n[var_idx] = 0;
        out.add_term(n, c);
    }
    return out;
}

bool Polynomial::contains_var(std::size_t var_idx) const {
    for (const auto& [m, c] : terms_) {
        if (m[var_idx] != 0) return true;
    }
    return false;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& images,
                                  const std::shared_ptr<const Universe>& target) const {
    const std::size_t n = uni_->size();
    // Image per source variable; identity for omitted ones.
    std::vector<Polynomial> image(n);
    std::vector<bool> needed(n, false);
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] != 0) needed[i] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!needed[i]) continue;
        auto it = images.find(uni_->name(i));
        if (it != images.end()) {
            image[i] = it->second.universe().get() == target.get() ? it->second
                                                                   : it->second.into(target);
        } else {
            image[i] = variable(field_, target, uni_->name(i));
        }
        if (image[i].field() != field_) throw FieldMismatch();
    }

    // Power cache per variable.
    std::vector<std::vector<Polynomial>> powers(n);
    auto power = [&](std::size_t i, std::int32_t e) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(field_, target, 1));
        while (static_cast<std::int32_t>(cache.size()) <= e) {
            cache.push_back(cache.back() * image[i]);
        }
        return cache[static_cast<std::size_t>(e)];
    };

    Polynomial out(field_, target);
    for (const auto& [m, c] : terms_) {
        Polynomial term = constant(field_, target, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            if (m[i] < 0) throw Error("substitute: negative exponent on substituted variable");
            term *= power(i, m[i]);
        }
        out += term;
    }
    return out;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& images) const {
    return substitute(images, uni_);
}

Polynomial Polynomial::into(const std::shared_ptr<const Universe>& target) const {
    if (uni_.get() == target.get() || uni_->same_content(*target)) {
        Polynomial out(*this);
        out.uni_ = target;
        return out;
    }
    std::vector<std::optional<std::size_t>> where(uni_->size());
    for (std::size_t i = 0; i < uni_->size(); ++i) where[i] = target->index_of(uni_->name(i));
    Polynomial out(field_, target);
    for (const auto& [m, c] : terms_) {
        Monomial n(target->size());
        for (std::size_t i = 0; i < uni_->size(); ++i) {
            if (m[i] == 0) continue;
            if (!where[i]) throw UnknownVariable(uni_->name(i));
            n[*where[i]] = m[i];
        }
        out.add_term(n, c);
    }
    return out;
}

std::optional<std::int64_t> Polynomial::weighted_degree(
    const std::vector<std::optional<std::int64_t>>& weights) const {
    if (terms_.empty()) return std::nullopt;
    bool first = true;
    std::int64_t best = 0;
    for (const auto& [m, c] : terms_) {
        std::int64_t w = 0;
        for (std::size_t i = 0; i < uni_->size(); ++i) {
            if (m[i] == 0) continue;
            if (!weights[i]) throw Error("weighted degree: no weight declared for " + uni_->name(i));
            w += *weights[i] * m[i];
        }
        if (first || w > best) best = w;
        first = false;
    }
    return best;
}

Polynomial Polynomial::top_form(const std::vector<std::optional<std::int64_t>>& weights) const {
    Polynomial out(field_, uni_);
    auto deg = weighted_degree(weights);
    if (!deg) return out;
    for (const auto& [m, c] : terms_) {
        std::int64_t w = 0;
        for (std::size_t i = 0; i < uni_->size(); ++i) {
            if (m[i] != 0) w += *weights[i] * m[i];
        }
        if (w == *deg) out.terms_.emplace(m, c);
    }
    return out;
}

std::optional<Polynomial> Polynomial::divide_exact_monomial(const Monomial& m) const {
    Polynomial out(field_, uni_);
    for (const auto& [t, c] : terms_) {
        if (!m.divides(t)) return std::nullopt;
        out.terms_.emplace(t.divided_by(m), c);
    }
    return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& g) const {
    check_compatible(g);
    if (g.is_zero()) throw Error("division by zero polynomial");
    Polynomial rem(*this);
    Polynomial quot(field_, uni_);
    const auto& glead = *g.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms_.rbegin();
        if (!glead.first.divides(rlead.first)) return std::nullopt;
        Monomial qm = rlead.first.divided_by(glead.first);
        FieldElem qc = rlead.second / glead.second;
        Polynomial qterm = from_monomial(field_, uni_, qm, qc);
        quot += qterm;
        rem -= qterm * g;
    }
    return quot;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending graded-lex.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        FieldElem mag = c.abs();
        if (first) {
            if (c.is_negative()) os << "-";
        } else {
            os << (c.is_negative() ? " - " : " + ");
        }
        first = false;
        bool has_vars = !m.is_constant();
        bool coeff_shown = !mag.is_one() || !has_vars;
        if (coeff_shown) os << mag.str();
        if (has_vars) {
            bool star = coeff_shown;
            for (std::size_t i = 0; i < uni_->size(); ++i) {
                if (m[i] == 0) continue;
                if (star) os << "*";
                star = true;
                os << uni_->name(i);
                if (m[i] != 1) os << "^" << m[i];
            }
        }
    }
    return os.str();
}

} // namespace dani
