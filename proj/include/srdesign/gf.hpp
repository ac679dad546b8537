#pragma once

// Finite fields GF(p^n) of odd or even characteristic with precomputed
// discrete-log tables, plus the cyclotomic queries the lifting searches use.
//
// A field element is encoded by the integer sum(c_i * p^i) of its ascending
// coefficient vector over the chosen primitive modulus. Read as an element of
// the additive group Z_p^n (first factor most significant) the same id has
// coordinates (c_{n-1}, ..., c_1, c_0).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "number_theory.hpp"

namespace srd {

struct FieldElement {
    std::uint32_t id = 0;

    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Polynomial over Z_p, coefficients in ascending degree order.
struct Polynomial {
    std::vector<std::uint32_t> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Parses "2,1,1" (ascending coefficients) as x^2 + x + 2.
inline Polynomial parse_polynomial(const std::string& text) {
    Polynomial poly;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("polynomial: empty coefficient in \"" + text + "\"");
        item = item.substr(b, e - b + 1);
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("polynomial: bad coefficient \"" + item + "\"");
        }
        if (pos != item.size() || v < 0) throw std::invalid_argument("polynomial: bad coefficient \"" + item + "\"");
        poly.coeffs.push_back(static_cast<std::uint32_t>(v));
    }
    if (poly.coeffs.empty()) throw std::invalid_argument("polynomial: no coefficients");
    return poly;
}

inline std::string format_polynomial(const Polynomial& poly) {
    std::string s;
    for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(poly.coeffs[i]);
    }
    return s;
}

namespace detail {

// Multiplication in Z_p[x]/(f) for a monic f of degree n; operands have n coefficients.
inline std::vector<std::uint64_t> polymulmod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                             const Polynomial& f, std::uint64_t p) {
    const std::size_t n = f.degree();
    std::vector<std::uint64_t> prod(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (std::size_t d = 2 * n; d-- > n;) {
        const std::uint64_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (std::size_t i = 0; i < n; ++i) prod[d - n + i] = (prod[d - n + i] + (p - c) * f.coeffs[i]) % p;
    }
    prod.resize(n);
    return prod;
}

inline std::vector<std::uint64_t> x_power(std::uint64_t e, const Polynomial& f, std::uint64_t p) {
    const std::size_t n = f.degree();
    std::vector<std::uint64_t> result(n, 0), base(n, 0);
    result[0] = 1;
    if (n == 1) {
        base[0] = (p - f.coeffs[0] % p) % p;  // x == -a0
    } else {
        base[1] = 1;
    }
    while (e > 0) {
        if (e & 1U) result = polymulmod(result, base, f, p);
        base = polymulmod(base, base, f, p);
        e >>= 1U;
    }
    return result;
}

inline bool is_one(const std::vector<std::uint64_t>& v) {
    if (v.empty() || v[0] != 1) return false;
    return std::all_of(v.begin() + 1, v.end(), [](auto c) { return c == 0; });
}

}  // namespace detail

/// True iff the monic degree-n modulus is primitive: x has multiplicative order p^n - 1.
inline bool is_primitive_polynomial(const Polynomial& f, std::uint64_t p) {
    const std::size_t n = f.degree();
    if (n < 1 || f.coeffs.back() != 1) return false;
    for (auto c : f.coeffs)
        if (c >= p) return false;
    if (f.coeffs[0] == 0) return false;
    const std::uint64_t order = ipow(p, static_cast<unsigned>(n)) - 1;
    if (!detail::is_one(detail::x_power(order, f, p))) return false;
    for (const auto& pp : factorize(order)) {
        if (detail::is_one(detail::x_power(order / pp.prime, f, p))) return false;
    }
    return true;
}

inline constexpr std::uint64_t kMaxFieldOrder = 1ULL << 22;

class FiniteField {
public:
    FiniteField() = default;

    std::uint32_t characteristic() const { return t_->p; }
    std::uint32_t degree() const { return t_->n; }
    std::uint32_t order() const { return t_->q; }
    const Polynomial& modulus() const { return t_->modulus; }

    FieldElement zero() const { return FieldElement{0}; }
    FieldElement one() const { return FieldElement{1}; }
    /// The root of the modulus, which generates the multiplicative group.
    FieldElement primitive() const { return FieldElement{t_->exp[1 % (t_->q - 1)]}; }

    bool contains(FieldElement x) const { return x.id < t_->q; }
    void check(FieldElement x) const {
        if (!contains(x))
            throw std::out_of_range("field element id " + std::to_string(x.id) + " outside GF(" +
                                    std::to_string(t_->q) + ")");
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (t_->n == 1) return FieldElement{(a.id + b.id) % t_->p};
        std::uint32_t id = 0, stride = 1;
        std::uint32_t x = a.id, y = b.id;
        for (std::uint32_t i = 0; i < t_->n; ++i) {
            id += ((x % t_->p + y % t_->p) % t_->p) * stride;
            x /= t_->p;
            y /= t_->p;
            stride *= t_->p;
        }
        return FieldElement{id};
    }
    FieldElement neg(FieldElement a) const {
        std::uint32_t id = 0, stride = 1, x = a.id;
        for (std::uint32_t i = 0; i < t_->n; ++i) {
            id += ((t_->p - x % t_->p) % t_->p) * stride;
            x /= t_->p;
            stride *= t_->p;
        }
        return FieldElement{id};
    }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.id == 0 || b.id == 0) return zero();
        const std::uint64_t s = static_cast<std::uint64_t>(t_->log[a.id]) + t_->log[b.id];
        return FieldElement{t_->exp[s % (t_->q - 1)]};
    }
    FieldElement inv(FieldElement a) const {
        if (a.id == 0) throw std::domain_error("inverse of zero");
        const std::uint32_t l = t_->log[a.id];
        return FieldElement{t_->exp[(t_->q - 1 - l) % (t_->q - 1)]};
    }
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
    FieldElement pow(FieldElement a, std::uint64_t e) const {
        if (a.id == 0) return e == 0 ? one() : zero();
        const auto l = static_cast<unsigned __int128>(t_->log[a.id]) * e % (t_->q - 1);
        return FieldElement{t_->exp[static_cast<std::uint32_t>(l)]};
    }
    /// The integer m read in the prime subfield.
    FieldElement from_int(std::int64_t m) const {
        const auto p = static_cast<std::int64_t>(t_->p);
        return FieldElement{static_cast<std::uint32_t>(((m % p) + p) % p)};
    }

    std::uint32_t log(FieldElement a) const {
        check(a);
        if (a.id == 0) throw std::domain_error("discrete log of zero");
        return t_->log[a.id];
    }
    FieldElement exp(std::int64_t i) const {
        const auto m = static_cast<std::int64_t>(t_->q - 1);
        return FieldElement{t_->exp[static_cast<std::size_t>(((i % m) + m) % m)]};
    }

    FieldElement from_coeffs(const std::vector<std::int64_t>& ascending) const {
        if (ascending.size() != t_->n)
            throw std::invalid_argument("field element needs " + std::to_string(t_->n) + " coefficients");
        std::uint32_t id = 0, stride = 1;
        for (auto c : ascending) {
            if (c < 0 || c >= static_cast<std::int64_t>(t_->p))
                throw std::out_of_range("field coefficient " + std::to_string(c) + " outside [0," +
                                        std::to_string(t_->p) + ")");
            id += static_cast<std::uint32_t>(c) * stride;
            stride *= t_->p;
        }
        return FieldElement{id};
    }
    std::vector<std::uint32_t> coeffs(FieldElement a) const {
        check(a);
        std::vector<std::uint32_t> out(t_->n);
        std::uint32_t x = a.id;
        for (auto& c : out) {
            c = x % t_->p;
            x /= t_->p;
        }
        return out;
    }

    std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out(t_->q);
        for (std::uint32_t i = 0; i < t_->q; ++i) out[i] = FieldElement{i};
        return out;
    }

    /// The additive group Z_p^n; a field element's id is its group element id.
    AbelianGroup additive_group() const { return AbelianGroup(std::vector<std::uint32_t>(t_->n, t_->p)); }
    static Element as_group_element(FieldElement x) { return Element{x.id}; }
    static FieldElement from_group_element(Element e) { return FieldElement{e.id}; }

    std::string to_string() const {
        return "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->n) + ")[" + format_polynomial(t_->modulus) + "]";
    }

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        return a.t_->p == b.t_->p && a.t_->n == b.t_->n && a.t_->modulus == b.t_->modulus;
    }

    friend FiniteField make_field(std::int64_t p, std::int64_t n, std::optional<Polynomial> modulus);

private:
    struct Tables {
        std::uint32_t p = 0, n = 0, q = 0;
        Polynomial modulus;
        std::vector<std::uint32_t> exp;  // exp[i] = r^i, 0 <= i < q-1
        std::vector<std::uint32_t> log;  // log[exp[i]] = i; log[0] unused
    };
    std::shared_ptr<const Tables> t_;
};

/// Builds GF(p^n). Without a modulus, the least primitive monic polynomial
/// (ordered by sum a_i p^i over its non-leading coefficients) is used.
inline FiniteField make_field(std::int64_t p, std::int64_t n, std::optional<Polynomial> modulus = std::nullopt) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("make_field: " + std::to_string(p) + " is not prime");
    if (n < 1) throw std::invalid_argument("make_field: degree must be >= 1");
    std::uint64_t q = 1;
    for (std::int64_t i = 0; i < n; ++i) {
        q *= static_cast<std::uint64_t>(p);
        if (q > kMaxFieldOrder)
            throw std::invalid_argument("make_field: field order exceeds the table cap 2^22");
    }
    const auto up = static_cast<std::uint64_t>(p);
    const auto un = static_cast<std::size_t>(n);
    Polynomial f;
    if (modulus) {
        f = *modulus;
        if (f.coeffs.size() != un + 1 || f.coeffs.back() != 1)
            throw std::invalid_argument("make_field: modulus must be monic of degree " + std::to_string(n));
        if (!is_primitive_polynomial(f, up))
            throw std::invalid_argument("make_field: modulus " + format_polynomial(f) + " is not primitive over Z_" +
                                        std::to_string(p));
    } else {
        const std::uint64_t count = q;  // choices for the n lower coefficients
        bool found = false;
        for (std::uint64_t idx = 1; idx < count && !found; ++idx) {
            Polynomial cand;
            cand.coeffs.resize(un + 1);
            std::uint64_t x = idx;
            for (std::size_t i = 0; i < un; ++i) {
                cand.coeffs[i] = static_cast<std::uint32_t>(x % up);
                x /= up;
            }
            cand.coeffs[un] = 1;
            if (is_primitive_polynomial(cand, up)) {
                f = std::move(cand);
                found = true;
            }
        }
        if (!found) throw std::logic_error("make_field: no primitive polynomial found");
    }

    auto t = std::make_shared<FiniteField::Tables>();
    t->p = static_cast<std::uint32_t>(p);
    t->n = static_cast<std::uint32_t>(n);
    t->q = static_cast<std::uint32_t>(q);
    t->modulus = f;
    t->exp.resize(q - 1);
    t->log.assign(q, 0);
    // Walk the powers of x, multiplying by x with reduction modulo f each step.
    std::vector<std::uint64_t> cur(un, 0);
    cur[0] = 1;
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
        std::uint64_t id = 0, stride = 1;
        for (std::size_t j = 0; j < un; ++j) {
            id += cur[j] * stride;
            stride *= up;
        }
        t->exp[i] = static_cast<std::uint32_t>(id);
        t->log[id] = static_cast<std::uint32_t>(i);
        if (un == 1) {
            cur[0] = cur[0] * ((up - f.coeffs[0]) % up) % up;
        } else {
            const std::uint64_t top = cur[un - 1];
            for (std::size_t j = un - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            for (std::size_t j = 0; j < un; ++j) cur[j] = (cur[j] + (up - f.coeffs[j]) * top) % up;
        }
    }
    FiniteField field;
    field.t_ = std::move(t);
    return field;
}

struct CyclotomicClassIndex {
    std::uint32_t lambda = 1;
    std::uint32_t index = 0;

    friend bool operator==(const CyclotomicClassIndex&, const CyclotomicClassIndex&) = default;
};

inline void require_divides_order(const FiniteField& field, std::uint64_t lambda) {
    if (lambda < 1 || (field.order() - 1) % lambda != 0)
        throw std::invalid_argument("cyclotomic order " + std::to_string(lambda) + " does not divide q-1 = " +
                                    std::to_string(field.order() - 1));
}

/// Index i of the class C^lambda_i = r^i C^lambda containing x.
inline CyclotomicClassIndex class_index(const FiniteField& field, FieldElement x, std::uint32_t lambda) {
    require_divides_order(field, lambda);
    if (x.id == 0) throw std::domain_error("class_index: zero lies in no cyclotomic class");
    return {lambda, field.log(x) % lambda};
}

inline std::vector<FieldElement> nonzero_squares(const FiniteField& field) {
    if (field.characteristic() == 2) throw std::invalid_argument("nonzero_squares: field order must be odd");
    std::vector<FieldElement> out;
    for (std::uint32_t i = 0; i + 1 < field.order(); i += 2) out.push_back(field.exp(i));
    std::sort(out.begin(), out.end());
    return out;
}

struct ClassConstraint {
    FieldElement point;
    std::uint32_t gamma = 0;
};

/// All x with x - c_i in C^lambda_{gamma_i} for every constraint, by full scan.
inline std::vector<FieldElement> x_set(const FiniteField& field, const std::vector<ClassConstraint>& constraints,
                                       std::uint32_t lambda) {
    require_divides_order(field, lambda);
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        field.check(constraints[i].point);
        for (std::size_t j = 0; j < i; ++j)
            if (constraints[i].point == constraints[j].point)
                throw std::invalid_argument("x_set: constraint points must be pairwise distinct");
    }
    std::vector<FieldElement> out;
    for (std::uint32_t id = 0; id < field.order(); ++id) {
        const FieldElement x{id};
        bool ok = true;
        for (const auto& c : constraints) {
            const FieldElement d = field.sub(x, c.point);
            if (d.id == 0 || field.log(d) % lambda != c.gamma % lambda) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

/// Which multiplicative cosets to pick representatives for.
struct CosetSpec {
    enum class Kind { subgroup_index, plus_minus_one_in_class };
    Kind kind = Kind::subgroup_index;
    std::uint64_t m = 1;

    /// Cosets of C^m (the index-m subgroup) in F_q^*.
    static CosetSpec of_index(std::uint64_t m) { return {Kind::subgroup_index, m}; }
    /// Cosets of {1,-1} in C^m.
    static CosetSpec pm_one_in(std::uint64_t m) { return {Kind::plus_minus_one_in_class, m}; }
};

/// One representative per coset, each of least log index.
inline std::vector<FieldElement> coset_reps(const FiniteField& field, CosetSpec spec) {
    const std::uint64_t order = field.order() - 1;
    if (spec.m < 1 || order % spec.m != 0)
        throw std::invalid_argument("coset_reps: index " + std::to_string(spec.m) + " does not divide q-1");
    std::vector<FieldElement> out;
    if (spec.kind == CosetSpec::Kind::subgroup_index) {
        for (std::uint64_t i = 0; i < spec.m; ++i) out.push_back(field.exp(static_cast<std::int64_t>(i)));
        return out;
    }
    // -1 = r^{(q-1)/2}; it lies in C^m iff m divides (q-1)/2.
    if (field.characteristic() == 2 || (order / 2) % spec.m != 0)
        throw std::invalid_argument("coset_reps: {1,-1} is not a subgroup of C^" + std::to_string(spec.m));
    const std::uint64_t count = order / spec.m / 2;
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(field.exp(static_cast<std::int64_t>(spec.m * i)));
    return out;
}

/// Ring embedding of a subfield GF(p^n) into GF(p^{nm}), tabulated.
class SubfieldEmbedding {
public:
    SubfieldEmbedding(FiniteField base, FiniteField field, std::vector<FieldElement> table)
        : base_(std::move(base)), field_(std::move(field)), table_(std::move(table)) {}

    FieldElement operator()(FieldElement x) const {
        base_.check(x);
        return table_[x.id];
    }
    const FiniteField& base() const { return base_; }
    const FiniteField& field() const { return field_; }

private:
    FiniteField base_;
    FiniteField field_;
    std::vector<FieldElement> table_;
};

inline SubfieldEmbedding subfield_embed(const FiniteField& field, const FiniteField& base) {
    if (field.characteristic() != base.characteristic() || field.degree() % base.degree() != 0)
        throw std::invalid_argument("subfield_embed: degree " + std::to_string(base.degree()) + " does not divide " +
                                    std::to_string(field.degree()));
    const std::uint64_t big = field.order() - 1;
    const std::uint64_t small = base.order() - 1;
    const std::uint64_t step = big / small;
    const auto& f = base.modulus();
    auto eval = [&](FieldElement y) {
        FieldElement acc = field.zero();
        for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = field.add(field.mul(acc, y), field.from_int(f.coeffs[i]));
        return acc;
    };
    // Find a root of the base modulus among the primitive elements of the subfield.
    std::optional<FieldElement> root;
    for (std::uint64_t j = 1; j <= small && !root; ++j) {
        if (std::gcd(j, small) != 1) continue;
        const FieldElement y = field.exp(static_cast<std::int64_t>(step * (j % small)));
        if (eval(y).id == 0) root = y;
    }
    if (!root) throw std::logic_error("subfield_embed: no root of the base modulus found");
    std::vector<FieldElement> table(base.order());
    for (std::uint32_t id = 0; id < base.order(); ++id) {
        const auto c = base.coeffs(FieldElement{id});
        FieldElement acc = field.zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = field.add(field.mul(acc, *root), field.from_int(c[i]));
        table[id] = acc;
    }
    return SubfieldEmbedding(base, field, std::move(table));
}

}  // namespace srd
