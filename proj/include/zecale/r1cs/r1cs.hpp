#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zecale::r1cs
{

using Variable = uint32_t;

/// Index of the constant-one variable.
inline constexpr Variable one_var = 0;

/// Sparse linear combination sum(coeff_i * z[index_i]).
template<class F> struct LinearCombination {
    std::vector<std::pair<Variable, F>> terms;

    LinearCombination() = default;
    LinearCombination(Variable v) : terms{{v, F::one()}} {} // NOLINT(google-explicit-constructor)
    LinearCombination(Variable v, const F &c) : terms{{v, c}} {}

    static LinearCombination constant(const F &c)
    {
        LinearCombination lc;
        if (!c.is_zero()) {
            lc.terms.emplace_back(one_var, c);
        }
        return lc;
    }

    LinearCombination &operator+=(const LinearCombination &o)
    {
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        return *this;
    }
    LinearCombination &operator-=(const LinearCombination &o)
    {
        for (const auto &[v, c] : o.terms) {
            terms.emplace_back(v, -c);
        }
        return *this;
    }
    friend LinearCombination operator+(LinearCombination a, const LinearCombination &b) { return a += b; }
    friend LinearCombination operator-(LinearCombination a, const LinearCombination &b) { return a -= b; }
    LinearCombination operator-() const { return scaled(-F::one()); }

    LinearCombination scaled(const F &s) const
    {
        LinearCombination r;
        if (s.is_zero()) {
            return r;
        }
        r.terms.reserve(terms.size());
        for (const auto &[v, c] : terms) {
            r.terms.emplace_back(v, c * s);
        }
        return r;
    }

    /// Merges repeated indices and drops zero coefficients.
    void compact()
    {
        if (terms.size() < 2) {
            if (!terms.empty() && terms[0].second.is_zero()) {
                terms.clear();
            }
            return;
        }
        std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<std::pair<Variable, F>> out;
        out.reserve(terms.size());
        for (const auto &t : terms) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second += t.second;
            } else {
                out.push_back(t);
            }
        }
        std::erase_if(out, [](const auto &t) { return t.second.is_zero(); });
        terms = std::move(out);
    }

    F evaluate(const std::vector<F> &z) const
    {
        F acc;
        for (const auto &[v, c] : terms) {
            acc += c * z[v];
        }
        return acc;
    }
};

template<class F> struct Constraint {
    LinearCombination<F> a;
    LinearCombination<F> b;
    LinearCombination<F> c;
};

/// Full variable assignment; entry 0 holds the constant 1.
template<class F> using Assignment = std::vector<F>;

/// R1CS over F. Variable 0 is the constant 1, variables 1..num_inputs are the
/// primary inputs, the rest are auxiliary.
template<class F> class ConstraintSystem
{
public:
    using Field = F;
    using LC = LinearCombination<F>;

    ConstraintSystem() = default;
    explicit ConstraintSystem(size_t num_inputs) : num_inputs_(num_inputs), num_variables_(1 + num_inputs) {}

    size_t num_inputs() const { return num_inputs_; }
    size_t num_variables() const { return num_variables_; }
    size_t num_constraints() const { return constraints_.size(); }
    const std::vector<Constraint<F>> &constraints() const { return constraints_; }

    Variable input(size_t i) const
    {
        if (i >= num_inputs_) {
            throw std::out_of_range("primary input index out of range");
        }
        return Variable(1 + i);
    }

    /// Adds a primary input; only valid before any auxiliary variable exists.
    Variable add_input()
    {
        if (num_variables_ != 1 + num_inputs_) {
            throw std::logic_error("primary inputs must be allocated before auxiliary variables");
        }
        ++num_inputs_;
        return Variable(num_variables_++);
    }

    Variable add_variable() { return Variable(num_variables_++); }

    size_t add_constraint(LC a, LC b, LC c)
    {
        for (const LC *lc : {&a, &b, &c}) {
            for (const auto &t : lc->terms) {
                if (t.first >= num_variables_) {
                    throw std::out_of_range("linear combination references unknown variable");
                }
            }
        }
        a.compact();
        b.compact();
        c.compact();
        constraints_.push_back({std::move(a), std::move(b), std::move(c)});
        return constraints_.size() - 1;
    }

    /// Index of the first violated constraint, or nullopt when satisfied.
    std::optional<size_t> first_unsatisfied(const Assignment<F> &z) const
    {
        if (z.size() != num_variables_) {
            throw std::invalid_argument("assignment length does not match variable count");
        }
        if (num_variables_ > 0 && !z[0].is_one()) {
            return constraints_.empty() ? std::nullopt : std::optional<size_t>(0);
        }
        for (size_t i = 0; i < constraints_.size(); ++i) {
            const auto &k = constraints_[i];
            if (k.a.evaluate(z) * k.b.evaluate(z) != k.c.evaluate(z)) {
                return i;
            }
        }
        return std::nullopt;
    }

    bool is_satisfied(const Assignment<F> &z) const { return !first_unsatisfied(z).has_value(); }

    std::string summary() const
    {
        std::ostringstream os;
        os << "constraints=" << num_constraints() << " variables=" << num_variables() << " inputs=" << num_inputs();
        return os.str();
    }

private:
    size_t num_inputs_ = 0;
    size_t num_variables_ = 1;
    std::vector<Constraint<F>> constraints_;
};

/// Fresh assignment of the right length with the constant slot set.
template<class F> Assignment<F> make_assignment(const ConstraintSystem<F> &cs)
{
    Assignment<F> z(cs.num_variables());
    z[0] = F::one();
    return z;
}

} // namespace zecale::r1cs
