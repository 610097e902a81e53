#include "zecale/circuit/builder.hpp"

#include <stdexcept>

namespace zecale::circuit
{

namespace
{

constexpr size_t compact_threshold = 24;

void maybe_compact(LC &lc)
{
    if (lc.terms.size() > compact_threshold) {
        lc.compact();
    }
}

} // namespace

bool Num::is_constant() const
{
    for (const auto &t : lc.terms) {
        if (t.first != r1cs::one_var && !t.second.is_zero()) {
            return false;
        }
    }
    return true;
}

Num &Num::operator+=(const Num &o)
{
    lc += o.lc;
    maybe_compact(lc);
    val += o.val;
    return *this;
}

Num &Num::operator-=(const Num &o)
{
    lc -= o.lc;
    maybe_compact(lc);
    val -= o.val;
    return *this;
}

Num Num::operator-() const { return Num(-lc, -val); }

Num Num::scaled(const F &s) const { return Num(lc.scaled(s), val * s); }

Builder::Builder(size_t num_inputs, bool record) : num_inputs_(num_inputs), record_(record), cs_(num_inputs)
{
    values_.assign(1 + num_inputs, F::zero());
    values_[0] = F::one();
}

Num Builder::input(size_t i, const F &value)
{
    if (i >= num_inputs_) {
        throw std::out_of_range("primary input index out of range");
    }
    values_[1 + i] = value;
    return Num(LC(r1cs::Variable(1 + i)), value);
}

Num Builder::witness(const F &value)
{
    const auto v = r1cs::Variable(values_.size());
    values_.push_back(value);
    if (record_) {
        const auto got = cs_.add_variable();
        if (got != v) {
            throw std::logic_error("variable numbering out of step");
        }
    }
    return Num(LC(v), value);
}

void Builder::enforce(const Num &a, const Num &b, const Num &c)
{
    if (!first_violation_ && a.val * b.val != c.val) {
        first_violation_ = constraint_count_;
    }
    if (record_) {
        cs_.add_constraint(a.lc, b.lc, c.lc);
    }
    ++constraint_count_;
}

Num Builder::mul(const Num &a, const Num &b)
{
    if (a.is_constant()) {
        return b.scaled(a.val);
    }
    if (b.is_constant()) {
        return a.scaled(b.val);
    }
    Num c = witness(a.val * b.val);
    enforce(a, b, c);
    return c;
}

Num Builder::boolean(bool value)
{
    Num b = witness(value ? F::one() : F::zero());
    assert_boolean(b);
    return b;
}

void Builder::assert_boolean(const Num &b) { enforce(b, Num::constant(1) - b, Num::constant(0)); }

void Builder::assert_equal(const Num &a, const Num &b) { enforce(a - b, Num::constant(1), Num::constant(0)); }

Num Builder::is_zero(const Num &a)
{
    const bool zero = a.val.is_zero();
    Num inv = witness(zero ? F::zero() : a.val.inverse());
    Num z = witness(zero ? F::one() : F::zero());
    enforce(a, inv, Num::constant(1) - z);
    enforce(a, z, Num::constant(0));
    return z;
}

Num Builder::select(const Num &bit, const Num &if_true, const Num &if_false)
{
    if (if_true.is_constant() && if_false.is_constant() && if_true.val == if_false.val) {
        return if_false;
    }
    if (bit.is_constant()) {
        return bit.val.is_zero() ? if_false : if_true;
    }
    // r = f + bit (t - f)
    const Num diff = if_true - if_false;
    Num r = witness(bit.val.is_zero() ? if_false.val : if_true.val);
    enforce(bit, diff, r - if_false);
    return r;
}

Num Builder::logical_or(const Num &a, const Num &b) { return a + b - mul(a, b); }

std::vector<Num> Builder::to_bits(const Num &a, size_t n)
{
    const auto x = a.val.to_int();
    std::vector<Num> bits;
    bits.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        bits.push_back(boolean(i < F::num_bits && x.bit(i)));
    }
    assert_equal(pack_bits(bits), a);
    return bits;
}

void Builder::assert_less_than(const std::vector<Num> &bits_le, const mpz_class &bound)
{
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) > bits_le.size()) {
        return; // every value of this width is already below the bound
    }
    // Walk from the top keeping eq = "prefix equals the bound" and lt = "prefix is smaller".
    Num eq = Num::constant(1);
    Num lt = Num::constant(0);
    for (size_t i = bits_le.size(); i-- > 0;) {
        const Num &b = bits_le[i];
        const Num t = mul(eq, b);
        if (mpz_tstbit(bound.get_mpz_t(), i)) {
            lt = lt + eq - t;
            eq = t;
        } else {
            eq = eq - t;
        }
    }
    assert_equal(lt, Num::constant(1));
}

CS Builder::take_system()
{
    if (!record_) {
        throw std::logic_error("builder did not record constraints");
    }
    return std::move(cs_);
}

Num pack_bits(const std::vector<Num> &bits_le)
{
    Num acc = Num::constant(0);
    F pow = F::one();
    for (const auto &b : bits_le) {
        acc += b.scaled(pow);
        pow = pow.dbl();
    }
    return acc;
}

} // namespace zecale::circuit
