// Command-line front end: matrix construction and verification, sequence
// generation and correlation sweeps. Exit codes: 0 success, 1 domain
// failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsgen/correlation.hpp"
#include "rsgen/diffmat.hpp"
#include "rsgen/field.hpp"
#include "rsgen/sequence.hpp"

namespace {

using namespace rsgen;

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

PolyZp parse_modulus(int p, const std::string& s) {
    PolyZp f{p, parse_int_list(s)};
    f.normalize();
    return f;
}

// Factor spec: "p,k" builds the default matrix, anything else is a path to
// a matrix document (which is re-verified by the generator constructor).
FactorGenerator make_factor(const std::string& spec, const std::vector<int>& a0) {
    GroupElement init{a0};
    auto ints = [&]() -> std::optional<std::pair<int, int>> {
        std::vector<int> v;
        try {
            v = parse_int_list(spec);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (v.size() != 2) return std::nullopt;
        return std::make_pair(v[0], v[1]);
    }();
    if (ints) return FactorGenerator(construct(ints->first, ints->second, ints->second), init);
    std::string path = spec.starts_with("@") ? spec.substr(1) : spec;
    return FactorGenerator(load_matrix(path), init);
}

CompositeGenerator make_generator(const std::string& matrix_file, const std::string& build,
                                  const std::vector<std::string>& factors,
                                  const std::vector<int>& a0) {
    std::vector<FactorGenerator> fs;
    if (!matrix_file.empty()) fs.push_back(make_factor(matrix_file, a0));
    if (!build.empty()) fs.push_back(make_factor(build, a0));
    for (const auto& f : factors) fs.push_back(make_factor(f, {}));
    if (fs.empty()) throw std::invalid_argument("no generator given: use --matrix, --build or --factor");
    return CompositeGenerator(std::move(fs));
}

SweepSpec parse_sweep_spec(const nlohmann::json& doc, std::string& out_path) {
    SweepSpec spec;
    for (const auto& jf : doc.at("factors")) {
        std::vector<int> a0;
        if (jf.contains("a0")) a0 = jf.at("a0").get<std::vector<int>>();
        GroupElement init{a0};
        if (jf.contains("matrix")) {
            spec.factors.emplace_back(load_matrix(jf.at("matrix").get<std::string>()), init);
        } else {
            int p = jf.at("p").get<int>();
            int k = jf.at("k").get<int>();
            std::optional<PolyZp> mod;
            if (jf.contains("modulus"))
                mod = PolyZp{p, jf.at("modulus").get<std::vector<int>>()};
            spec.factors.emplace_back(construct(p, k, k, mod), init);
        }
    }
    spec.lengths = doc.at("N").get<std::vector<std::uint64_t>>();
    for (const auto& js : doc.at("shifts")) {
        ShiftPair sp{js.at(0).get<std::uint64_t>(), js.at(1).get<std::uint64_t>()};
        if (sp.r1 >= sp.r2) throw std::invalid_argument("sweep spec: need r1 < r2");
        spec.shifts.push_back(sp);
    }
    if (doc.contains("out")) out_path = doc.at("out").get<std::string>();
    return spec;
}

int run_selftest() {
    // Embedded invariant suite over constructed matrices.
    for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}}) {
        DifferenceMatrix m = construct(p, k, k);
        if (!verify(m).ok) {
            std::cerr << "error=selftest step=construct p=" << p << " k=" << k << "\n";
            return 1;
        }
    }
    for (auto [p, k] : {std::pair{2, 1}, {2, 2}, {3, 2}}) {
        FactorGenerator f(construct(p, k, k));
        for (std::uint64_t n = 0; n < 2000; ++n) {
            if (!(f.value_recursive(n) == f.value_digits(n))) {
                std::cerr << "error=selftest step=digit-closed-form n=" << n << "\n";
                return 1;
            }
        }
    }
    FactorGenerator f2(construct(2, 1, 1));
    for (std::uint64_t n = 0; n < 4096; ++n) {
        if (f2.symbol(n) != classical_rs(n)) {
            std::cerr << "error=selftest step=classical-rs n=" << n << "\n";
            return 1;
        }
    }
    CompositeGenerator comp({FactorGenerator(construct(2, 2, 2)), FactorGenerator(construct(3, 1, 1))});
    auto streamed = stream_symbols(comp, 17, 500);
    for (std::uint64_t i = 0; i < 500; ++i) {
        if (streamed[i] != comp.value(17 + i)) {
            std::cerr << "error=selftest step=stream n=" << 17 + i << "\n";
            return 1;
        }
    }
    std::cout << "selftest ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Difference matrices and generalized Rudin-Shapiro sequences"};
    app.require_subcommand(1);

    // build-matrix
    auto* bm = app.add_subcommand("build-matrix", "Construct a matrix from a field multiplication table");
    int bm_p = 2, bm_k = 1, bm_n = 0;
    std::string bm_modulus, bm_out;
    bm->add_option("--p", bm_p, "prime")->required();
    bm->add_option("--k", bm_k, "field degree")->required();
    bm->add_option("--n", bm_n, "group exponent (default k)");
    bm->add_option("--modulus", bm_modulus, "modulus coefficients c0,c1,...,ck");
    bm->add_option("--out", bm_out, "output file (default stdout)");

    // verify-matrix
    auto* vm = app.add_subcommand("verify-matrix", "Check the difference property of a matrix file");
    std::string vm_file;
    vm->add_option("--file", vm_file)->required();

    // normalize
    auto* nm = app.add_subcommand("normalize", "Order-normalize a matrix file");
    std::string nm_file, nm_out;
    nm->add_option("--file", nm_file)->required();
    nm->add_option("--out", nm_out, "output file (default stdout)");

    // gen-sequence
    auto* gs = app.add_subcommand("gen-sequence", "Stream sequence symbols");
    std::string gs_matrix, gs_build, gs_a0, gs_format = "symbols";
    std::vector<std::string> gs_factors;
    std::uint64_t gs_start = 0, gs_count = 0;
    gs->add_option("--matrix", gs_matrix, "matrix file");
    gs->add_option("--build", gs_build, "p,k (constructed matrix)");
    gs->add_option("--factor", gs_factors, "composite factor, p,k or matrix file (repeatable, order significant)");
    gs->add_option("--a0", gs_a0, "initial value coordinates c1,c2,... (single factor only)");
    gs->add_option("--start", gs_start);
    gs->add_option("--count", gs_count)->required();
    gs->add_option("--format", gs_format)->check(CLI::IsMember({"symbols", "csv"}));

    // correlate
    auto* co = app.add_subcommand("correlate", "Exact correlation sum");
    std::string co_matrix, co_build, co_a0;
    std::vector<std::string> co_factors;
    std::uint64_t co_N = 0, co_r1 = 0, co_r2 = 1;
    int co_threads = 0;
    co->add_option("--matrix", co_matrix);
    co->add_option("--build", co_build, "p,k");
    co->add_option("--factor", co_factors);
    co->add_option("--a0", co_a0);
    co->add_option("--N", co_N)->required();
    co->add_option("--r1", co_r1);
    co->add_option("--r2", co_r2)->required();
    co->add_option("--threads", co_threads, "worker count (default: available parallelism)");

    // sweep
    auto* sw = app.add_subcommand("sweep", "CSV sweep over (N, shift) cells");
    std::string sw_spec, sw_out;
    int sw_threads = 0;
    sw->add_option("--spec", sw_spec)->required();
    sw->add_option("--out", sw_out, "output CSV (overrides spec)");
    sw->add_option("--threads", sw_threads);

    app.add_subcommand("selftest", "Run the embedded invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bm->parsed()) {
            int n = bm_n == 0 ? bm_k : bm_n;
            std::optional<PolyZp> mod;
            if (!bm_modulus.empty()) mod = parse_modulus(bm_p, bm_modulus);
            DifferenceMatrix m = construct(bm_p, bm_k, n, mod);
            if (bm_out.empty())
                std::cout << to_json(m) << "\n";
            else
                save_matrix(m, bm_out);
        } else if (vm->parsed()) {
            DifferenceMatrix m = load_matrix(vm_file);
            DiffCheckReport rep = verify(m);
            std::cout << rep.message << "\n";
            return rep.ok ? 0 : 1;
        } else if (nm->parsed()) {
            DifferenceMatrix m = load_matrix(nm_file);
            DiffCheckReport rep = verify(m);
            if (!rep.ok) {
                std::cerr << rep.message << "\n";
                return 1;
            }
            NormalizeResult res = order_normalize(m);
            if (nm_out.empty())
                std::cout << to_json(res.matrix) << "\n";
            else
                save_matrix(res.matrix, nm_out);
        } else if (gs->parsed()) {
            std::vector<int> a0;
            if (!gs_a0.empty()) a0 = parse_int_list(gs_a0);
            CompositeGenerator gen = make_generator(gs_matrix, gs_build, gs_factors, a0);
            auto symbols = stream_symbols(gen, gs_start, gs_count);
            if (gs_format == "csv") {
                std::cout << "n,symbol\n";
                for (std::uint64_t i = 0; i < gs_count; ++i)
                    std::cout << gs_start + i << ',' << symbols[i] << '\n';
            } else {
                for (std::uint64_t i = 0; i < gs_count; ++i)
                    std::cout << (i ? "," : "") << symbols[i];
                std::cout << '\n';
            }
        } else if (co->parsed()) {
            std::vector<int> a0;
            if (!co_a0.empty()) a0 = parse_int_list(co_a0);
            CompositeGenerator gen = make_generator(co_matrix, co_build, co_factors, a0);
            int threads = co_threads > 0 ? co_threads
                                         : static_cast<int>(std::thread::hardware_concurrency());
            CorrelationReport rep =
                correlation_sum(gen, co_N, ShiftPair{co_r1, co_r2}, std::max(threads, 1));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9f", rep.normalized);
            std::cout << "N=" << rep.N << " r1=" << rep.shift.r1 << " r2=" << rep.shift.r2
                      << " sum=" << rep.sum << " main=" << rep.main.to_string()
                      << " deviation=" << rep.deviation.to_string() << " normalized=" << buf
                      << "\n";
        } else if (sw->parsed()) {
            std::ifstream in(sw_spec);
            if (!in) throw std::runtime_error("cannot open " + sw_spec);
            nlohmann::json doc = nlohmann::json::parse(in);
            std::string out_path = sw_out;
            SweepSpec spec = parse_sweep_spec(doc, out_path);
            int threads = sw_threads > 0 ? sw_threads : 1;
            if (out_path.empty()) {
                sweep(spec, std::cout, threads);
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot write " + out_path);
                sweep(spec, out, threads);
            }
        } else {
            return run_selftest();
        }
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error=parse message=\"" << e.what() << "\"\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error=domain message=\"" << e.what() << "\"\n";
        return 1;
    }
    return 0;
}
