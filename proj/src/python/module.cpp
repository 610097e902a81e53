#include "zecale/app/pipeline.hpp"
#include "zecale/ledger/gas.hpp"
#include "zecale/util/hex.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace zecale;

namespace
{

// Python ints cross the boundary as hex strings, the simplest lossless path
// for values wider than 64 bits.
mpz_class to_mpz(const py::int_ &v)
{
    const auto s = py::cast<std::string>(py::module_::import("builtins").attr("hex")(v));
    if (s.front() == '-') {
        throw py::value_error("expected a non-negative integer");
    }
    return util::mpz_from_hex(s);
}

py::int_ to_py(const mpz_class &v) { return py::int_(py::module_::import("builtins").attr("int")(v.get_str(16), 16)); }

template<class F> F to_field(const py::int_ &v, const mpz_class &p)
{
    const auto m = to_mpz(v);
    if (m >= p) {
        throw py::value_error("integer is not below the field modulus");
    }
    return util::field_from_mpz<F>(m);
}

py::bytes as_bytes(const util::Bytes &b) { return py::bytes(reinterpret_cast<const char *>(b.data()), b.size()); }

util::Bytes from_py_bytes(const py::bytes &b)
{
    const std::string s = b;
    return util::Bytes(s.begin(), s.end());
}

/// Demo application keys held on the C++ side.
class DemoKeys
{
public:
    explicit DemoKeys(uint64_t seed) : kp_(app_.setup(seed)) {}

    py::bytes vk() const { return as_bytes(kp_.crs.vk.to_bytes()); }

    /// (proof bytes, raw instance) for the factors a, b.
    py::tuple prove(const py::int_ &a, const py::int_ &b, const py::int_ &salt, bool zk) const
    {
        const mpz_class rn = encoding::nested_modulus();
        const auto fa = to_field<app::Fn>(a, rn);
        const auto fb = to_field<app::Fn>(b, rn);
        const auto fs = to_field<app::Fn>(salt, rn);
        groth16::Proof<app::Nested> proof;
        try {
            proof = app_.prove(kp_.crs, fa, fb, fs, zk);
        } catch (const std::invalid_argument &e) {
            throw py::value_error(e.what());
        }
        py::list x;
        for (const auto &e : app::DemoApp::raw_instance(fa, fb, fs)) {
            x.append(to_py(util::field_to_mpz(e)));
        }
        return py::make_tuple(as_bytes(proof.to_bytes()), x);
    }

private:
    app::DemoApp app_;
    groth16::Keypair<app::Nested> kp_;
};

bool verify_demo(const py::bytes &vk_bytes, const py::bytes &proof_bytes, const std::vector<py::int_> &x)
{
    circuit::NestedVk vk;
    groth16::Proof<app::Nested> proof;
    try {
        vk = circuit::NestedVk::from_bytes(from_py_bytes(vk_bytes));
        proof = groth16::Proof<app::Nested>::from_bytes(from_py_bytes(proof_bytes));
    } catch (const std::invalid_argument &) {
        return false;
    }
    const mpz_class rn = encoding::nested_modulus();
    std::vector<app::Fn> xs;
    for (const auto &v : x) {
        const auto m = to_mpz(v);
        if (m >= rn) {
            return false;
        }
        xs.push_back(util::field_from_mpz<app::Fn>(m));
    }
    return circuit::nested_verify(vk, xs, proof);
}

} // namespace

PYBIND11_MODULE(_zecale, m)
{
    m.doc() = "Bindings for the Zecale aggregation library";

    m.def("nested_modulus", [] { return to_py(encoding::nested_modulus()); });
    m.def("wrapping_modulus", [] { return to_py(encoding::wrapping_modulus()); });
    m.def("hash_id", &encoding::HashConfig::id);
    m.def("xh_limbs", &encoding::xh_limbs);

    m.def(
        "to_field",
        [](const py::int_ &digest, size_t bits, const py::int_ &p) {
            const encoding::Digest d{bits, to_mpz(digest)};
            if (mpz_sizeinbase(d.value.get_mpz_t(), 2) > bits && d.value != 0) {
                throw py::value_error("digest wider than its bit length");
            }
            std::vector<py::int_> out;
            for (const auto &c : encoding::to_field(d, to_mpz(p))) {
                out.push_back(to_py(c));
            }
            return out;
        },
        py::arg("digest"), py::arg("bits"), py::arg("p"));
    m.def(
        "to_digest",
        [](const std::vector<py::int_> &chunks, const py::int_ &p, size_t bits) {
            encoding::FieldEncoding t;
            for (const auto &c : chunks) {
                t.push_back(to_mpz(c));
            }
            try {
                return to_py(encoding::to_digest(t, to_mpz(p), bits).value);
            } catch (const std::invalid_argument &e) {
                throw py::value_error(e.what());
            }
        },
        py::arg("chunks"), py::arg("p"), py::arg("bits"));

    m.def("encode_xvalid", &encoding::encode_xvalid, py::arg("bits"));
    m.def(
        "decode_xvalid",
        [](uint64_t v, size_t n) {
            try {
                return encoding::decode_xvalid(v, n);
            } catch (const std::invalid_argument &e) {
                throw py::value_error(e.what());
            }
        },
        py::arg("value"), py::arg("n"));

    m.def(
        "gas_saved",
        [](int64_t dgas, int64_t vn, int64_t vw, size_t n) {
            ledger::GasModel g;
            g.dgas = dgas;
            g.vn = vn;
            g.vw = vw;
            try {
                return ledger::gas_saved(g, n);
            } catch (const std::invalid_argument &e) {
                throw py::value_error(e.what());
            }
        },
        py::arg("dgas"), py::arg("vn"), py::arg("vw"), py::arg("n"));

    m.def(
        "bench_pairings",
        [](size_t n, uint64_t seed) {
            if (n == 0) {
                throw py::value_error("n must be positive");
            }
            const auto b = app::bench_pairings(n, seed);
            py::dict d;
            d["n"] = b.n;
            d["naive"] = b.naive;
            d["batch"] = b.batch;
            d["agree"] = b.agree;
            return d;
        },
        py::arg("n"), py::arg("seed") = 1);

    py::class_<DemoKeys>(m, "DemoKeys")
        .def(py::init<uint64_t>(), py::arg("seed"))
        .def_property_readonly("vk", &DemoKeys::vk)
        .def("prove", &DemoKeys::prove, py::arg("a"), py::arg("b"), py::arg("salt") = 0, py::arg("zk") = true);
    m.def("verify_demo", &verify_demo, py::arg("vk"), py::arg("proof"), py::arg("inputs"));
}
