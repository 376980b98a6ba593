#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsgen/correlation.hpp"
#include "rsgen/diffmat.hpp"
#include "rsgen/field.hpp"
#include "rsgen/sequence.hpp"

namespace py = pybind11;
using namespace rsgen;

namespace {

py::dict matrix_to_dict(const DifferenceMatrix& m) {
    py::dict d;
    d["p"] = m.mod;
    d["k"] = m.k;
    d["rows"] = m.rows;
    d["cols"] = m.cols;
    py::list entries;
    for (const auto& row : m.entries) {
        py::list jrow;
        for (const auto& g : row) jrow.append(g.coords);
        entries.append(jrow);
    }
    d["entries"] = entries;
    return d;
}

DifferenceMatrix matrix_from_dict(const py::dict& d) {
    DifferenceMatrix m;
    m.mod = d["p"].cast<int>();
    m.k = d["k"].cast<int>();
    m.rows = d["rows"].cast<int>();
    m.cols = d["cols"].cast<int>();
    m.provenance = "loaded(python)";
    for (const auto& row : d["entries"]) {
        std::vector<GroupElement> r;
        for (const auto& g : row.cast<py::list>())
            r.push_back(GroupElement{g.cast<std::vector<int>>()});
        m.entries.push_back(std::move(r));
    }
    return m;
}

FactorGenerator factor_from_object(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return FactorGenerator(load_matrix(obj.cast<std::string>()));
    if (py::isinstance<py::dict>(obj))
        return FactorGenerator(matrix_from_dict(obj.cast<py::dict>()));
    auto pk = obj.cast<std::pair<int, int>>();
    return FactorGenerator(construct(pk.first, pk.second, pk.second));
}

py::dict report_to_dict(const CorrelationReport& rep) {
    py::dict d;
    d["N"] = rep.N;
    d["r1"] = rep.shift.r1;
    d["r2"] = rep.shift.r2;
    d["sum"] = rep.sum;
    d["main"] = py::make_tuple(rep.main.num, rep.main.den);
    d["deviation"] = py::make_tuple(rep.deviation.num, rep.deviation.den);
    d["normalized"] = rep.normalized;
    return d;
}

class PyGenerator {
public:
    PyGenerator(const py::list& factors, std::optional<std::vector<int>> a0) {
        std::vector<FactorGenerator> fs;
        for (const auto& f : factors) fs.push_back(factor_from_object(py::reinterpret_borrow<py::object>(f)));
        if (a0) {
            if (fs.size() != 1)
                throw std::invalid_argument("a0 override requires a single factor");
            DifferenceMatrix m = fs[0].matrix();
            fs[0] = FactorGenerator(std::move(m), GroupElement{*a0});
        }
        gen_ = std::make_unique<CompositeGenerator>(std::move(fs));
    }

    long long alphabet_size() const { return gen_->alphabet_size(); }
    int value(std::uint64_t n) const { return gen_->value(n); }
    std::vector<int> symbols(std::uint64_t start, std::uint64_t count) const {
        return stream_symbols(*gen_, start, count);
    }
    py::dict correlate(std::uint64_t N, std::uint64_t r1, std::uint64_t r2, int threads) const {
        return report_to_dict(correlation_sum(*gen_, N, ShiftPair{r1, r2}, threads));
    }

private:
    std::unique_ptr<CompositeGenerator> gen_;
};

}  // namespace

PYBIND11_MODULE(_rsgen, m) {
    m.doc() = "Difference matrices and generalized Rudin-Shapiro sequences";

    m.def("classical_rs", &classical_rs, py::arg("n"));
    m.def("find_irreducible", [](int p, int k) { return find_irreducible(p, k).coeffs; },
          py::arg("p"), py::arg("k"),
          "Coefficients (constant first) of the default modulus polynomial");
    m.def(
        "build_matrix",
        [](int p, int k, int n, std::optional<std::vector<int>> modulus) {
            std::optional<PolyZp> mod;
            if (modulus) mod = PolyZp{p, *modulus};
            return matrix_to_dict(construct(p, k, n == 0 ? k : n, mod));
        },
        py::arg("p"), py::arg("k"), py::arg("n") = 0, py::arg("modulus") = py::none());
    m.def(
        "verify_matrix",
        [](const py::dict& doc) {
            DiffCheckReport rep = verify(matrix_from_dict(doc));
            py::dict d;
            d["ok"] = rep.ok;
            d["message"] = rep.message;
            return d;
        },
        py::arg("matrix"));
    m.def(
        "normalize_matrix",
        [](const py::dict& doc) {
            return matrix_to_dict(order_normalize(matrix_from_dict(doc)).matrix);
        },
        py::arg("matrix"));
    m.def("load_matrix", [](const std::string& path) { return matrix_to_dict(load_matrix(path)); },
          py::arg("path"));
    m.def("theorem_bound", &theorem_bound, py::arg("p"), py::arg("k"), py::arg("r"), py::arg("N"));

    py::class_<PyGenerator>(m, "Generator")
        .def(py::init<const py::list&, std::optional<std::vector<int>>>(), py::arg("factors"),
             py::arg("a0") = py::none())
        .def_property_readonly("alphabet_size", &PyGenerator::alphabet_size)
        .def("value", &PyGenerator::value, py::arg("n"))
        .def("symbols", &PyGenerator::symbols, py::arg("start"), py::arg("count"))
        .def("correlate", &PyGenerator::correlate, py::arg("N"), py::arg("r1") = 0,
             py::arg("r2") = 1, py::arg("threads") = 1);
}
