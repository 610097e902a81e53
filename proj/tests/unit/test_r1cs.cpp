#include "zecale/curves/bls12_377.hpp"
#include "zecale/r1cs/r1cs.hpp"

#include <gtest/gtest.h>

using namespace zecale;
using F = curves::bls12_377::Fr;
using CS = r1cs::ConstraintSystem<F>;
using LC = r1cs::LinearCombination<F>;

namespace
{

F f(uint64_t v) { return F::from_u64(v); }

TEST(R1cs, MultiplicationGate)
{
    CS cs;
    const auto x = cs.add_variable();
    const auto y = cs.add_variable();
    const auto z = cs.add_variable();
    EXPECT_EQ(cs.add_constraint(LC(x), LC(y), LC(z)), 0u);
    EXPECT_EQ(cs.num_constraints(), 1u);
    auto a = r1cs::make_assignment(cs);
    a[x] = f(3);
    a[y] = f(5);
    a[z] = f(15);
    EXPECT_TRUE(cs.is_satisfied(a));
    a[z] = f(14);
    EXPECT_FALSE(cs.is_satisfied(a));
    EXPECT_EQ(cs.first_unsatisfied(a), std::optional<size_t>(0));
}

TEST(R1cs, BooleanConstraint)
{
    CS cs;
    const auto b = cs.add_variable();
    cs.add_constraint(LC(b), LC(b) - LC(r1cs::one_var), LC());
    auto a = r1cs::make_assignment(cs);
    for (uint64_t v : {0u, 1u}) {
        a[b] = f(v);
        EXPECT_TRUE(cs.is_satisfied(a)) << v;
    }
    a[b] = f(2);
    EXPECT_FALSE(cs.is_satisfied(a));
}

TEST(R1cs, HashedInstanceToyRelation)
{
    // public h; witness a, b, c, t with c = a b, t = c^2, h = t + c
    CS cs(1);
    const auto h = cs.input(0);
    const auto av = cs.add_variable();
    const auto bv = cs.add_variable();
    const auto cv = cs.add_variable();
    const auto tv = cs.add_variable();
    cs.add_constraint(LC(av), LC(bv), LC(cv));
    cs.add_constraint(LC(cv), LC(cv), LC(tv));
    cs.add_constraint(LC(tv) + LC(cv), LC(r1cs::one_var), LC(h));
    EXPECT_EQ(cs.num_constraints(), 3u);

    auto z = r1cs::make_assignment(cs);
    z[av] = f(3);
    z[bv] = f(5);
    z[cv] = f(15);
    z[tv] = f(225);
    z[h] = f(240); // evaluated by hand: 15^2 + 15
    EXPECT_TRUE(cs.is_satisfied(z));
    z[h] = f(241);
    EXPECT_FALSE(cs.is_satisfied(z));
}

TEST(R1cs, EmptySystemAlwaysSatisfied)
{
    CS cs(2);
    auto z = r1cs::make_assignment(cs);
    z[1] = f(99);
    EXPECT_TRUE(cs.is_satisfied(z));
}

TEST(R1cs, Errors)
{
    CS cs;
    const auto x = cs.add_variable();
    EXPECT_THROW(cs.add_constraint(LC(x), LC(x + 1), LC()), std::out_of_range);
    EXPECT_THROW(cs.add_input(), std::logic_error);
    EXPECT_THROW(cs.is_satisfied(r1cs::Assignment<F>(5)), std::invalid_argument);
    EXPECT_THROW(cs.input(0), std::out_of_range);
}

TEST(R1cs, InputsFormPrefix)
{
    CS cs;
    const auto i0 = cs.add_input();
    const auto i1 = cs.add_input();
    const auto w = cs.add_variable();
    EXPECT_EQ(i0, 1u);
    EXPECT_EQ(i1, 2u);
    EXPECT_EQ(w, 3u);
    EXPECT_EQ(cs.num_inputs(), 2u);
    EXPECT_EQ(cs.num_variables(), 4u);
    EXPECT_EQ(cs.summary(), "constraints=0 variables=4 inputs=2");
}

TEST(R1cs, CompactMergesTerms)
{
    LC lc = LC(3, f(2)) + LC(1, f(4)) + LC(3, f(5)) - LC(1, f(4));
    lc.compact();
    ASSERT_EQ(lc.terms.size(), 1u);
    EXPECT_EQ(lc.terms[0].first, 3u);
    EXPECT_EQ(lc.terms[0].second, f(7));
}

} // namespace
