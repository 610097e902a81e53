#include "zecale/groth16/groth16.hpp"

#include "zecale/curves/bls12_377.hpp"
#include "zecale/curves/bw6_761.hpp"
#include "zecale/ec/msm.hpp"
#include "zecale/groth16/qap.hpp"
#include "zecale/util/drbg.hpp"

#include <stdexcept>

namespace zecale::groth16
{

namespace
{

template<class P> void write_points(util::ByteWriter &w, const std::vector<P> &pts)
{
    w.u32(uint32_t(pts.size()));
    for (const auto &p : pts) {
        w.raw(p.to_bytes());
    }
}

template<class P> P read_point(util::ByteReader &r)
{
    auto p = P::from_bytes_unchecked(r.raw(P::num_bytes));
    if (!p.is_on_curve()) {
        throw std::invalid_argument("encoded point is not on the curve");
    }
    return p;
}

template<class P> std::vector<P> read_points(util::ByteReader &r)
{
    const uint32_t n = r.u32();
    if (size_t(n) * P::num_bytes > r.remaining()) {
        throw std::invalid_argument("truncated point list");
    }
    std::vector<P> out;
    out.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        out.push_back(read_point<P>(r));
    }
    return out;
}

template<class E> void require_g1(const typename E::G1Affine &p)
{
    if (!E::g1_valid(p)) {
        throw std::invalid_argument("G1 point outside the prime-order subgroup");
    }
}

template<class E> void require_g2(const typename E::G2Affine &p)
{
    if (!E::g2_valid(p)) {
        throw std::invalid_argument("G2 point outside the prime-order subgroup");
    }
}

template<class E, class Rng> typename E::Fr nonzero_scalar(Rng &rng) { return E::Fr::random_nonzero(rng); }

template<class E> void write_vk(util::ByteWriter &w, const VerifyingKey<E> &vk)
{
    w.raw(vk.alpha_g1.to_bytes());
    w.raw(vk.beta_g2.to_bytes());
    w.raw(vk.gamma_g2.to_bytes());
    w.raw(vk.delta_g2.to_bytes());
    write_points(w, vk.ic);
}

template<class E> VerifyingKey<E> read_vk(util::ByteReader &r)
{
    VerifyingKey<E> vk;
    vk.alpha_g1 = read_point<typename E::G1Affine>(r);
    vk.beta_g2 = read_point<typename E::G2Affine>(r);
    vk.gamma_g2 = read_point<typename E::G2Affine>(r);
    vk.delta_g2 = read_point<typename E::G2Affine>(r);
    vk.ic = read_points<typename E::G1Affine>(r);
    return vk;
}

} // namespace

template<class E> util::Bytes VerifyingKey<E>::to_bytes() const
{
    util::ByteWriter w;
    write_vk(w, *this);
    return w.take();
}

template<class E> VerifyingKey<E> VerifyingKey<E>::from_bytes(std::span<const uint8_t> in)
{
    util::ByteReader r(in);
    VerifyingKey vk = read_vk<E>(r);
    r.expect_done();
    require_g1<E>(vk.alpha_g1);
    require_g2<E>(vk.beta_g2);
    require_g2<E>(vk.gamma_g2);
    require_g2<E>(vk.delta_g2);
    if (vk.ic.empty()) {
        throw std::invalid_argument("verifying key has no input elements");
    }
    for (const auto &p : vk.ic) {
        require_g1<E>(p);
    }
    return vk;
}

template<class E> util::Bytes Crs<E>::to_bytes() const
{
    util::ByteWriter w;
    w.raw(pk.alpha_g1.to_bytes());
    w.raw(pk.beta_g1.to_bytes());
    w.raw(pk.delta_g1.to_bytes());
    w.raw(pk.beta_g2.to_bytes());
    w.raw(pk.delta_g2.to_bytes());
    write_points(w, pk.a_query);
    write_points(w, pk.b_g1_query);
    write_points(w, pk.b_g2_query);
    write_points(w, pk.h_query);
    write_points(w, pk.l_query);
    write_vk(w, vk);
    return w.take();
}

template<class E> Crs<E> Crs<E>::from_bytes(std::span<const uint8_t> in)
{
    util::ByteReader r(in);
    Crs crs;
    crs.pk.alpha_g1 = read_point<typename E::G1Affine>(r);
    crs.pk.beta_g1 = read_point<typename E::G1Affine>(r);
    crs.pk.delta_g1 = read_point<typename E::G1Affine>(r);
    crs.pk.beta_g2 = read_point<typename E::G2Affine>(r);
    crs.pk.delta_g2 = read_point<typename E::G2Affine>(r);
    crs.pk.a_query = read_points<typename E::G1Affine>(r);
    crs.pk.b_g1_query = read_points<typename E::G1Affine>(r);
    crs.pk.b_g2_query = read_points<typename E::G2Affine>(r);
    crs.pk.h_query = read_points<typename E::G1Affine>(r);
    crs.pk.l_query = read_points<typename E::G1Affine>(r);
    crs.vk = read_vk<E>(r);
    r.expect_done();
    if (crs.pk.b_g1_query.size() != crs.pk.a_query.size() || crs.pk.b_g2_query.size() != crs.pk.a_query.size()) {
        throw std::invalid_argument("proving key query lengths disagree");
    }
    return crs;
}

template<class E> util::Bytes Proof<E>::to_bytes() const
{
    util::ByteWriter w;
    w.raw(a.to_bytes());
    w.raw(b.to_bytes());
    w.raw(c.to_bytes());
    return w.take();
}

template<class E> Proof<E> Proof<E>::from_bytes_unchecked(std::span<const uint8_t> in)
{
    util::ByteReader r(in);
    Proof p;
    p.a = E::G1Affine::from_bytes_unchecked(r.raw(E::G1Affine::num_bytes));
    p.b = E::G2Affine::from_bytes_unchecked(r.raw(E::G2Affine::num_bytes));
    p.c = E::G1Affine::from_bytes_unchecked(r.raw(E::G1Affine::num_bytes));
    r.expect_done();
    return p;
}

template<class E> Proof<E> Proof<E>::from_bytes(std::span<const uint8_t> in)
{
    Proof p = from_bytes_unchecked(in);
    require_g1<E>(p.a);
    require_g2<E>(p.b);
    require_g1<E>(p.c);
    return p;
}

template<class E> Keypair<E> setup(const r1cs::ConstraintSystem<typename E::Fr> &cs, uint64_t seed)
{
    using Fr = typename E::Fr;
    using G1P = typename E::G1Affine::Params_type;
    using G2P = typename E::G2Affine::Params_type;

    util::Drbg rng(seed, std::string("zecale.groth16.setup.") + E::name);
    Trapdoor<E> td;
    td.alpha = nonzero_scalar<E>(rng);
    td.beta = nonzero_scalar<E>(rng);
    td.gamma = nonzero_scalar<E>(rng);
    td.delta = nonzero_scalar<E>(rng);
    // tau must avoid the domain, otherwise Z(tau) = 0
    const EvaluationDomain<Fr> domain = qap_domain(cs);
    do {
        td.tau = nonzero_scalar<E>(rng);
    } while (domain.vanishing_at(td.tau).is_zero());

    const QapEvaluation<Fr> q = qap_evaluate_at(cs, td.tau);
    const size_t nv = cs.num_variables();
    const size_t ni = cs.num_inputs();

    const Fr gamma_inv = td.gamma.inverse();
    const Fr delta_inv = td.delta.inverse();

    std::vector<Fr> ic_scalars(ni + 1);
    std::vector<Fr> l_scalars(nv - ni - 1);
    for (size_t i = 0; i < nv; ++i) {
        const Fr k = td.beta * q.u[i] + td.alpha * q.v[i] + q.w[i];
        if (i <= ni) {
            ic_scalars[i] = k * gamma_inv;
        } else {
            l_scalars[i - ni - 1] = k * delta_inv;
        }
    }
    std::vector<Fr> h_scalars(q.domain_size > 1 ? q.domain_size - 1 : 1);
    {
        Fr t = q.zt * delta_inv;
        for (auto &h : h_scalars) {
            h = t;
            t *= td.tau;
        }
    }

    const ec::FixedBaseTable<G1P> g1_table(E::G1::generator(), Fr::num_bits);
    const ec::FixedBaseTable<G2P> g2_table(E::G2::generator(), Fr::num_bits);

    Keypair<E> kp;
    ProvingKey<E> &pk = kp.crs.pk;
    VerifyingKey<E> &vk = kp.crs.vk;
    pk.alpha_g1 = g1_table.mul(td.alpha.to_int()).to_affine();
    pk.beta_g1 = g1_table.mul(td.beta.to_int()).to_affine();
    pk.delta_g1 = g1_table.mul(td.delta.to_int()).to_affine();
    pk.beta_g2 = g2_table.mul(td.beta.to_int()).to_affine();
    pk.delta_g2 = g2_table.mul(td.delta.to_int()).to_affine();
    pk.a_query = g1_table.batch_mul(std::span<const Fr>(q.u));
    pk.b_g1_query = g1_table.batch_mul(std::span<const Fr>(q.v));
    pk.b_g2_query = g2_table.batch_mul(std::span<const Fr>(q.v));
    pk.h_query = g1_table.batch_mul(std::span<const Fr>(h_scalars));
    pk.l_query = g1_table.batch_mul(std::span<const Fr>(l_scalars));

    vk.alpha_g1 = pk.alpha_g1;
    vk.beta_g2 = pk.beta_g2;
    vk.gamma_g2 = g2_table.mul(td.gamma.to_int()).to_affine();
    vk.delta_g2 = pk.delta_g2;
    vk.ic = g1_table.batch_mul(std::span<const Fr>(ic_scalars));
    kp.td = td;
    return kp;
}

template<class E>
Proof<E> prove(const Crs<E> &crs, const r1cs::ConstraintSystem<typename E::Fr> &cs,
               const r1cs::Assignment<typename E::Fr> &z, bool zk, std::optional<uint64_t> seed)
{
    using Fr = typename E::Fr;
    using G1P = typename E::G1Affine::Params_type;
    using G2P = typename E::G2Affine::Params_type;

    if (!cs.is_satisfied(z)) {
        throw std::invalid_argument("assignment does not satisfy the constraint system");
    }
    const ProvingKey<E> &pk = crs.pk;
    const size_t nv = cs.num_variables();
    const size_t ni = cs.num_inputs();
    if (pk.a_query.size() != nv || pk.l_query.size() != nv - ni - 1) {
        throw std::invalid_argument("proving key does not match the constraint system");
    }

    Fr r;
    Fr s;
    if (zk) {
        util::Drbg rng = seed ? util::Drbg(*seed, "zecale.groth16.prove") : util::Drbg::from_entropy();
        r = Fr::random(rng);
        s = Fr::random(rng);
    }

    const std::vector<Fr> h = qap_witness_h(cs, z);
    if (h.size() > pk.h_query.size()) {
        throw std::invalid_argument("proving key H query too short");
    }

    const std::span<const Fr> zs(z);
    const std::span<const Fr> aux = zs.subspan(ni + 1);

    typename E::G1 a = typename E::G1(pk.alpha_g1) +
                       ec::multi_scalar_mul<G1P>(zs, std::span<const typename E::G1Affine>(pk.a_query));
    typename E::G2 b2 = typename E::G2(pk.beta_g2) +
                        ec::multi_scalar_mul<G2P>(zs, std::span<const typename E::G2Affine>(pk.b_g2_query));
    typename E::G1 c = ec::multi_scalar_mul<G1P>(aux, std::span<const typename E::G1Affine>(pk.l_query)) +
                       ec::multi_scalar_mul<G1P>(std::span<const Fr>(h),
                                                 std::span<const typename E::G1Affine>(pk.h_query).first(h.size()));
    if (zk) {
        const typename E::G1 b1 = typename E::G1(pk.beta_g1) +
                                  ec::multi_scalar_mul<G1P>(zs, std::span<const typename E::G1Affine>(pk.b_g1_query));
        const typename E::G1 delta1(pk.delta_g1);
        a += delta1 * r;
        b2 += typename E::G2(pk.delta_g2) * s;
        const typename E::G1 b1s = b1 + delta1 * s;
        c += a * s + b1s * r - delta1 * (r * s);
    }
    Proof<E> proof;
    proof.a = a.to_affine();
    proof.b = b2.to_affine();
    proof.c = c.to_affine();
    return proof;
}

template<class E> typename E::G1 accumulate_inputs(const VerifyingKey<E> &vk, std::span<const typename E::Fr> x)
{
    using G1P = typename E::G1Affine::Params_type;
    if (x.size() + 1 != vk.ic.size()) {
        throw std::invalid_argument("instance length does not match the verifying key");
    }
    return typename E::G1(vk.ic[0]) +
           ec::multi_scalar_mul<G1P>(x, std::span<const typename E::G1Affine>(vk.ic).subspan(1));
}

template<class E> bool proof_points_valid(const Proof<E> &proof)
{
    return !proof.a.infinity && !proof.b.infinity && !proof.c.infinity && E::g1_valid(proof.a) &&
           E::g2_valid(proof.b) && E::g1_valid(proof.c);
}

template<class E> bool verify(const VerifyingKey<E> &vk, std::span<const typename E::Fr> x, const Proof<E> &proof)
{
    const typename E::G1 gamma_acc = accumulate_inputs(vk, x);
    if (!proof_points_valid(proof)) {
        return false;
    }
    const std::pair<typename E::G1Affine, typename E::G2Affine> pairs[4] = {
        {proof.a, proof.b},
        {-vk.alpha_g1, vk.beta_g2},
        {(-gamma_acc).to_affine(), vk.gamma_g2},
        {-proof.c, vk.delta_g2},
    };
    return E::pairing_product(pairs).is_one();
}

template<class E>
Proof<E> simulate(const Crs<E> &crs, const Trapdoor<E> &td, std::span<const typename E::Fr> x,
                  std::optional<uint64_t> seed)
{
    using Fr = typename E::Fr;
    util::Drbg rng = seed ? util::Drbg(*seed, "zecale.groth16.simulate") : util::Drbg::from_entropy();
    const Fr a = Fr::random_nonzero(rng);
    const Fr b = Fr::random_nonzero(rng);
    const Fr delta_inv = td.delta.inverse();
    // C = ((ab - alpha beta) / delta) G1 - (gamma / delta) Gamma
    const typename E::G1 gamma_acc = accumulate_inputs(crs.vk, x);
    Proof<E> p;
    p.a = (E::G1::generator() * a).to_affine();
    p.b = (E::G2::generator() * b).to_affine();
    p.c = (E::G1::generator() * ((a * b - td.alpha * td.beta) * delta_inv) - gamma_acc * (td.gamma * delta_inv))
              .to_affine();
    return p;
}

#define ZECALE_GROTH16_INSTANTIATE(E)                                                                                  \
    template struct VerifyingKey<E>;                                                                                   \
    template struct Crs<E>;                                                                                            \
    template struct Proof<E>;                                                                                          \
    template Keypair<E> setup<E>(const r1cs::ConstraintSystem<E::Fr> &, uint64_t);                                     \
    template Proof<E> prove<E>(const Crs<E> &, const r1cs::ConstraintSystem<E::Fr> &, const r1cs::Assignment<E::Fr> &, \
                               bool, std::optional<uint64_t>);                                                         \
    template E::G1 accumulate_inputs<E>(const VerifyingKey<E> &, std::span<const E::Fr>);                              \
    template bool verify<E>(const VerifyingKey<E> &, std::span<const E::Fr>, const Proof<E> &);                        \
    template bool proof_points_valid<E>(const Proof<E> &);                                                             \
    template Proof<E> simulate<E>(const Crs<E> &, const Trapdoor<E> &, std::span<const E::Fr>,                         \
                                  std::optional<uint64_t>);

ZECALE_GROTH16_INSTANTIATE(curves::bls12_377::Engine)
ZECALE_GROTH16_INSTANTIATE(curves::bw6_761::Engine)

#undef ZECALE_GROTH16_INSTANTIATE

} // namespace zecale::groth16
