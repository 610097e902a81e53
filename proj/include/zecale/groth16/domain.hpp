#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace zecale::groth16
{

/// Multiplicative subgroup of order m = 2^k in F, with radix-2 FFTs.
template<class F> class EvaluationDomain
{
public:
    explicit EvaluationDomain(size_t min_size)
    {
        size_ = 1;
        log_size_ = 0;
        while (size_ < min_size) {
            size_ <<= 1;
            ++log_size_;
        }
        const auto [two_adicity, max_root] = root_of_unity_table();
        if (log_size_ > two_adicity) {
            throw std::invalid_argument("evaluation domain larger than the field's 2-adic subgroup");
        }
        omega_ = max_root;
        for (size_t i = log_size_; i < two_adicity; ++i) {
            omega_ = omega_.square();
        }
        omega_inv_ = omega_.inverse();
        size_inv_ = F::from_u64(size_).inverse();
        coset_ = coset_generator();
        coset_inv_ = coset_.inverse();
    }

    size_t size() const { return size_; }
    const F &omega() const { return omega_; }
    const F &coset_shift() const { return coset_; }

    F element(size_t i) const { return omega_.pow(uint64_t(i)); }

    /// Coefficients -> evaluations over the domain.
    void fft(std::vector<F> &a) const { transform(a, omega_); }

    void ifft(std::vector<F> &a) const
    {
        transform(a, omega_inv_);
        for (auto &x : a) {
            x *= size_inv_;
        }
    }

    /// Coefficients -> evaluations over g * domain.
    void coset_fft(std::vector<F> &a) const
    {
        scale_powers(a, coset_);
        fft(a);
    }

    void coset_ifft(std::vector<F> &a) const
    {
        ifft(a);
        scale_powers(a, coset_inv_);
    }

    /// Z(t) = t^m - 1.
    F vanishing_at(const F &t) const { return t.pow(uint64_t(size_)) - F::one(); }

    /// Lagrange basis polynomials L_0..L_{m-1} evaluated at t (t outside the domain).
    std::vector<F> lagrange_at(const F &t) const
    {
        std::vector<F> out(size_);
        const F z = vanishing_at(t);
        if (z.is_zero()) {
            F w = F::one();
            for (size_t i = 0; i < size_; ++i) {
                out[i] = (w == t) ? F::one() : F::zero();
                w *= omega_;
            }
            return out;
        }
        // L_i(t) = Z(t) / m * w^i / (t - w^i)
        std::vector<F> denom(size_);
        F w = F::one();
        for (size_t i = 0; i < size_; ++i) {
            denom[i] = t - w;
            w *= omega_;
        }
        batch_invert(denom);
        const F c = z * size_inv_;
        w = F::one();
        for (size_t i = 0; i < size_; ++i) {
            out[i] = c * w * denom[i];
            w *= omega_;
        }
        return out;
    }

    static void batch_invert(std::vector<F> &v)
    {
        std::vector<F> prefix(v.size());
        F acc = F::one();
        for (size_t i = 0; i < v.size(); ++i) {
            prefix[i] = acc;
            acc *= v[i];
        }
        F inv = acc.inverse();
        for (size_t i = v.size(); i-- > 0;) {
            const F vi = v[i];
            v[i] = inv * prefix[i];
            inv *= vi;
        }
    }

private:
    static std::pair<size_t, F> root_of_unity_table()
    {
        static const std::pair<size_t, F> table = [] {
            auto q = F::modulus;
            q.sub_assign(typename F::Int(1));
            size_t s = 0;
            while (!q.is_odd()) {
                q.shr1();
                ++s;
            }
            F g = F::from_u64(2);
            while (g.legendre() != -1) {
                g += F::one();
            }
            return std::make_pair(s, g.pow(q));
        }();
        return table;
    }

    static F coset_generator()
    {
        // a non-residue is never an element of a 2-power subgroup coset of the domain
        F g = F::from_u64(5);
        while (g.legendre() != -1) {
            g += F::one();
        }
        return g;
    }

    static void scale_powers(std::vector<F> &a, const F &g)
    {
        F p = F::one();
        for (auto &x : a) {
            x *= p;
            p *= g;
        }
    }

    void transform(std::vector<F> &a, const F &root) const
    {
        if (a.size() != size_) {
            throw std::invalid_argument("fft input size mismatch");
        }
        // bit reversal
        for (size_t i = 1, j = 0; i < size_; ++i) {
            size_t bit = size_ >> 1;
            for (; j & bit; bit >>= 1) {
                j ^= bit;
            }
            j ^= bit;
            if (i < j) {
                std::swap(a[i], a[j]);
            }
        }
        for (size_t len = 2; len <= size_; len <<= 1) {
            F wl = root;
            for (size_t k = len; k < size_; k <<= 1) {
                wl = wl.square();
            }
            std::vector<F> tw(len / 2);
            tw[0] = F::one();
            for (size_t j = 1; j < len / 2; ++j) {
                tw[j] = tw[j - 1] * wl;
            }
            for (size_t i = 0; i < size_; i += len) {
                for (size_t j = 0; j < len / 2; ++j) {
                    const F u = a[i + j];
                    const F v = a[i + j + len / 2] * tw[j];
                    a[i + j] = u + v;
                    a[i + j + len / 2] = u - v;
                }
            }
        }
    }

    size_t size_ = 1;
    size_t log_size_ = 0;
    F omega_;
    F omega_inv_;
    F size_inv_;
    F coset_;
    F coset_inv_;
};

} // namespace zecale::groth16
