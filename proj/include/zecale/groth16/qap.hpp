#pragma once

#include "zecale/groth16/domain.hpp"
#include "zecale/r1cs/r1cs.hpp"

#include <vector>

namespace zecale::groth16
{

/// Number of QAP rows: every constraint plus one input-consistency row
/// (z_i * 0 = 0) for the constant and each primary input. The extra rows keep
/// the input polynomials linearly independent.
template<class F> size_t qap_rows(const r1cs::ConstraintSystem<F> &cs)
{
    return cs.num_constraints() + cs.num_inputs() + 1;
}

template<class F> EvaluationDomain<F> qap_domain(const r1cs::ConstraintSystem<F> &cs)
{
    return EvaluationDomain<F>(qap_rows(cs));
}

/// U_i(t), V_i(t), W_i(t) for every variable, plus Z(t).
template<class F> struct QapEvaluation {
    std::vector<F> u;
    std::vector<F> v;
    std::vector<F> w;
    F zt;
    size_t domain_size = 0;
};

template<class F> QapEvaluation<F> qap_evaluate_at(const r1cs::ConstraintSystem<F> &cs, const F &t)
{
    const EvaluationDomain<F> domain = qap_domain(cs);
    const std::vector<F> lag = domain.lagrange_at(t);
    QapEvaluation<F> q;
    q.u.assign(cs.num_variables(), F::zero());
    q.v.assign(cs.num_variables(), F::zero());
    q.w.assign(cs.num_variables(), F::zero());
    q.zt = domain.vanishing_at(t);
    q.domain_size = domain.size();
    const auto &cons = cs.constraints();
    for (size_t row = 0; row < cons.size(); ++row) {
        for (const auto &[var, c] : cons[row].a.terms) {
            q.u[var] += c * lag[row];
        }
        for (const auto &[var, c] : cons[row].b.terms) {
            q.v[var] += c * lag[row];
        }
        for (const auto &[var, c] : cons[row].c.terms) {
            q.w[var] += c * lag[row];
        }
    }
    for (size_t i = 0; i <= cs.num_inputs(); ++i) {
        q.u[i] += lag[cons.size() + i];
    }
    return q;
}

/// Evaluations of A(X), B(X), C(X) over the domain rows for assignment z.
template<class F>
void qap_row_values(const r1cs::ConstraintSystem<F> &cs, const r1cs::Assignment<F> &z, size_t m, std::vector<F> &a,
                    std::vector<F> &b, std::vector<F> &c)
{
    a.assign(m, F::zero());
    b.assign(m, F::zero());
    c.assign(m, F::zero());
    const auto &cons = cs.constraints();
    for (size_t row = 0; row < cons.size(); ++row) {
        a[row] = cons[row].a.evaluate(z);
        b[row] = cons[row].b.evaluate(z);
        c[row] = cons[row].c.evaluate(z);
    }
    for (size_t i = 0; i <= cs.num_inputs(); ++i) {
        a[cons.size() + i] = z[i];
    }
}

/// Coefficients of H(X) = (A(X) B(X) - C(X)) / Z(X), degree <= m - 2,
/// computed on a coset. Only meaningful when z satisfies cs.
template<class F> std::vector<F> qap_witness_h(const r1cs::ConstraintSystem<F> &cs, const r1cs::Assignment<F> &z)
{
    const EvaluationDomain<F> domain = qap_domain(cs);
    const size_t m = domain.size();
    std::vector<F> a;
    std::vector<F> b;
    std::vector<F> c;
    qap_row_values(cs, z, m, a, b, c);
    domain.ifft(a);
    domain.ifft(b);
    domain.ifft(c);
    domain.coset_fft(a);
    domain.coset_fft(b);
    domain.coset_fft(c);
    const F z_inv = domain.vanishing_at(domain.coset_shift()).inverse();
    for (size_t i = 0; i < m; ++i) {
        a[i] = (a[i] * b[i] - c[i]) * z_inv;
    }
    domain.coset_ifft(a);
    a.resize(m > 1 ? m - 1 : 1);
    return a;
}

template<class F> struct QapDivision {
    std::vector<F> quotient;
    std::vector<F> remainder;
    bool exact() const
    {
        for (const auto &r : remainder) {
            if (!r.is_zero()) {
                return false;
            }
        }
        return true;
    }
};

/// Long division of A(X) B(X) - C(X) by X^m - 1 with explicit polynomial
/// product. Slower than qap_witness_h; used to cross-check it.
template<class F> QapDivision<F> qap_divide(const r1cs::ConstraintSystem<F> &cs, const r1cs::Assignment<F> &z)
{
    const EvaluationDomain<F> domain = qap_domain(cs);
    const size_t m = domain.size();
    std::vector<F> a;
    std::vector<F> b;
    std::vector<F> c;
    qap_row_values(cs, z, m, a, b, c);
    domain.ifft(a);
    domain.ifft(b);
    domain.ifft(c);
    const EvaluationDomain<F> big(2 * m);
    a.resize(2 * m);
    b.resize(2 * m);
    c.resize(2 * m);
    big.fft(a);
    big.fft(b);
    big.fft(c);
    for (size_t i = 0; i < 2 * m; ++i) {
        a[i] = a[i] * b[i] - c[i];
    }
    big.ifft(a);
    // a has degree <= 2m - 2; a = h (X^m - 1) + r
    QapDivision<F> d;
    d.quotient.assign(m > 1 ? m - 1 : 1, F::zero());
    d.remainder.assign(m, F::zero());
    for (size_t j = 0; j + m < 2 * m; ++j) {
        if (j < d.quotient.size()) {
            d.quotient[j] = a[j + m];
        }
    }
    for (size_t j = 0; j < m; ++j) {
        d.remainder[j] = a[j] + (j < d.quotient.size() ? d.quotient[j] : F::zero());
    }
    return d;
}

} // namespace zecale::groth16
