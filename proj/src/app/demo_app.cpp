#include "zecale/app/demo_app.hpp"

#include "zecale/encoding/encoding.hpp"

#include <stdexcept>

namespace zecale::app
{

using LC = r1cs::LinearCombination<Fn>;

DemoApp::DemoApp() : cs_(encoding::xh_limbs())
{
    a_ = cs_.add_variable();
    b_ = cs_.add_variable();
    product_ = cs_.add_variable();
    a_inv_ = cs_.add_variable();
    b_inv_ = cs_.add_variable();
    cs_.add_constraint(LC(a_), LC(b_), LC(product_));
    cs_.add_constraint(LC(a_), LC(a_inv_), LC(r1cs::one_var));
    cs_.add_constraint(LC(b_), LC(b_inv_), LC(r1cs::one_var));
}

r1cs::Assignment<Fn> DemoApp::assign(const Fn &a, const Fn &b, const Fn &salt) const
{
    if (a.is_zero() || b.is_zero()) {
        throw std::invalid_argument("factors must be nonzero");
    }
    auto z = r1cs::make_assignment(cs_);
    const auto statement = encoding::nested_statement(raw_instance(a, b, salt));
    for (size_t i = 0; i < statement.size(); ++i) {
        z[cs_.input(i)] = statement[i];
    }
    z[a_] = a;
    z[b_] = b;
    z[product_] = a * b;
    z[a_inv_] = a.inverse();
    z[b_inv_] = b.inverse();
    return z;
}

groth16::Keypair<Nested> DemoApp::setup(uint64_t seed) const { return groth16::setup<Nested>(cs_, seed); }

groth16::Proof<Nested> DemoApp::prove(const groth16::Crs<Nested> &crs, const Fn &a, const Fn &b, const Fn &salt,
                                      bool zk) const
{
    return groth16::prove<Nested>(crs, cs_, assign(a, b, salt), zk);
}

} // namespace zecale::app
