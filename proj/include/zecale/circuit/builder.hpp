#pragma once

#include "zecale/encoding/poseidon.hpp"
#include "zecale/r1cs/r1cs.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace zecale::circuit
{

/// Wrapping-circuit field, equal to the nested curve's base field.
using F = encoding::Fw;
using LC = r1cs::LinearCombination<F>;
using CS = r1cs::ConstraintSystem<F>;

/// A linear combination travelling with its value under the current
/// assignment. Linear operations never add constraints.
struct Num {
    LC lc;
    F val;

    Num() = default;
    Num(LC l, const F &v) : lc(std::move(l)), val(v) {}

    static Num constant(const F &c) { return Num(LC::constant(c), c); }
    static Num constant(uint64_t c) { return constant(F::from_u64(c)); }

    bool is_constant() const;

    Num &operator+=(const Num &o);
    Num &operator-=(const Num &o);
    friend Num operator+(Num a, const Num &b) { return a += b; }
    friend Num operator-(Num a, const Num &b) { return a -= b; }
    Num operator-() const;
    Num scaled(const F &s) const;
};

/// Allocates variables, records constraints and keeps the assignment in
/// step. With `record` off only counts are kept, which is how witnesses are
/// produced for an already built system.
class Builder
{
public:
    Builder(size_t num_inputs, bool record);

    Num input(size_t i, const F &value);
    Num witness(const F &value);

    void enforce(const Num &a, const Num &b, const Num &c);

    Num mul(const Num &a, const Num &b);
    Num square(const Num &a) { return mul(a, a); }

    Num boolean(bool value);
    void assert_boolean(const Num &b);
    void assert_equal(const Num &a, const Num &b);

    /// 1 when a = 0, else 0 (two constraints).
    Num is_zero(const Num &a);
    Num select(const Num &bit, const Num &if_true, const Num &if_false);
    Num logical_and(const Num &a, const Num &b) { return mul(a, b); }
    Num logical_or(const Num &a, const Num &b);

    /// Little-endian bits of a, with the packing constraint. The caller adds
    /// a range bound if the decomposition must be unique.
    std::vector<Num> to_bits(const Num &a, size_t n);

    /// Enforces sum bits_le[i] 2^i < bound (one constraint per bit).
    void assert_less_than(const std::vector<Num> &bits_le, const mpz_class &bound);

    size_t num_constraints() const { return constraint_count_; }
    size_t num_variables() const { return values_.size(); }
    size_t num_inputs() const { return num_inputs_; }

    /// Index of the first enforced constraint whose values did not satisfy it.
    std::optional<size_t> first_violation() const { return first_violation_; }

    CS take_system();
    r1cs::Assignment<F> take_assignment() { return std::move(values_); }

private:
    size_t num_inputs_;
    bool record_;
    CS cs_;
    std::vector<F> values_;
    size_t constraint_count_ = 0;
    std::optional<size_t> first_violation_;
};

/// sum bits_le[i] 2^i as a linear combination.
Num pack_bits(const std::vector<Num> &bits_le);

} // namespace zecale::circuit
