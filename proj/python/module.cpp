#include <pybind11/gil_safe_call_once.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lookknave/dynamics.hpp"
#include "lookknave/variants.hpp"

namespace py = pybind11;
using namespace lookknave;

namespace {

py::dict certificate_dict(const FixedPointCertificate& c) {
    py::dict d;
    d["parity"] = std::string(parity_name(c.parity));
    d["certified_bits"] = c.certified_bits;
    d["iterations"] = c.iterations;
    d["seed"] = c.seed.to_string();
    d["prefix"] = c.prefix.to_string();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Look-Knave sequences: bit strings, the Knave map, fixed points and growth";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() -> py::object { return py::exception<Error>(m, "LookKnaveError", PyExc_ValueError); });
    // Python-side errors carry the C++ code name in .code
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error& e) {
            const py::object& type = error_type.get_stored();
            py::object exc = type(e.what());
            exc.attr("code") = std::string(errc_name(e.code()));
            exc.attr("position") = e.position() ? py::cast(*e.position()) : py::none();
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    m.attr("DEFAULT_MAX_BITS") = default_max_bits;

    m.def("knave_step", [](std::string_view s) { return knave_step(parse(s)).to_string(); }, py::arg("bits"));

    m.def("decompose_runs", [](std::string_view s) {
        std::vector<std::pair<int, std::size_t>> out;
        for (const Run& r : decompose_runs(parse(s))) {
            out.emplace_back(r.bit ? 1 : 0, r.length);
        }
        return out;
    }, py::arg("bits"));

    m.def("numeral", [](std::int64_t n) { return numeral(n).to_string(); }, py::arg("n"));

    m.def("orbit", [](std::string_view seed, std::size_t steps, std::size_t max_bits) {
        const Orbit o = orbit(parse(seed), steps, max_bits);
        std::vector<std::string> terms;
        for (const auto& r : o.records) {
            terms.push_back(r.term.to_string());
        }
        return terms;
    }, py::arg("seed"), py::arg("steps"), py::arg("max_bits") = default_max_bits,
       "Terms s_1 = seed .. s_steps; shorter if the bit cap stops the orbit.");

    m.def("stable_prefix", [](std::string_view seed, std::size_t m_, std::size_t max_bits) {
        return stable_prefix(parse(seed), m_, max_bits);
    }, py::arg("seed"), py::arg("m"), py::arg("max_bits") = default_max_bits);

    m.def("lcp", [](std::string_view a, std::string_view b) { return lcp(parse(a), parse(b)); });

    m.def("metric_exponent", [](std::string_view a, std::string_view b) {
        return metric(parse(a), parse(b)).exponent;
    }, py::arg("a"), py::arg("b"), "n with d(a, b) = 2^-n, or None when the sequences are equal.");

    m.def("fixed_point_prefix", [](std::string_view parity, std::size_t bits, std::size_t max_iterations,
                                   std::size_t max_bits) {
        return certificate_dict(fixed_point_prefix(parse_parity(parity), bits, max_iterations, max_bits));
    }, py::arg("parity"), py::arg("bits") = 1024, py::arg("max_iterations") = default_max_iterations,
       py::arg("max_bits") = default_max_bits);

    m.def("looksay_step_decimal", [](std::string_view s) { return looksay_step_decimal(s); }, py::arg("digits"));
    m.def("looksay_step_binary", [](std::string_view s) { return looksay_step_binary(parse(s)).to_string(); },
          py::arg("bits"));

    m.def("growth_lengths", [](std::string_view variant, std::string_view seed, std::size_t steps,
                               std::size_t max_symbols) {
        const auto series = growth_ratios(parse_variant(variant), seed, steps, max_symbols);
        std::vector<std::size_t> lengths;
        for (const auto& p : series.points) {
            lengths.push_back(p.length);
        }
        return py::make_tuple(lengths, series.cap_exceeded);
    }, py::arg("variant"), py::arg("seed") = "1", py::arg("steps") = 40, py::arg("max_symbols") = default_max_bits,
       "(lengths, cap_exceeded) for s_1 .. s_steps.");

    m.def("estimate_lambda", [](const std::vector<std::size_t>& lengths) {
        std::vector<GrowthPoint> points;
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            points.push_back({i + 1, lengths[i], std::nullopt});
        }
        const auto est = estimate_lambda(points);
        py::dict d;
        d["lambda_hat"] = est.lambda_hat;
        d["window"] = py::make_tuple(est.n_lo, est.n_hi);
        d["residual"] = est.residual;
        return d;
    }, py::arg("lengths"), "Fit lengths[k] ~ C * lambda^(k+1) over the last half.");

    m.def("element_table", [] {
        std::vector<py::dict> rows;
        for (const auto& r : check_element_table().rows) {
            py::dict d;
            d["fragment"] = r.fragment;
            d["expected"] = r.expected;
            d["actual"] = r.actual;
            d["matches"] = r.matches;
            d["no_shorter"] = r.no_shorter;
            rows.push_back(d);
        }
        return rows;
    });

    m.def("ribbit_bounds", [](std::string_view seed, std::size_t steps, std::size_t max_bits) {
        const auto r = check_ribbit_bounds(parse(seed), steps, max_bits);
        py::dict d;
        d["last"] = r.last;
        d["max_ribbit"] = r.max_ribbit;
        d["max_even_ribbit"] = r.max_even_ribbit;
        d["cap_exceeded"] = r.cap_exceeded;
        return d;
    }, py::arg("seed") = "1", py::arg("steps") = 200, py::arg("max_bits") = default_max_bits);

    m.def("basin", [](std::size_t max_len, std::size_t steps, std::size_t threshold, bool parallel) {
        BasinOptions options;
        options.max_len = max_len;
        options.steps = steps;
        options.threshold_bits = threshold;
        options.parallel = parallel;
        std::vector<std::pair<std::string, std::string>> out;
        {
            py::gil_scoped_release release;
            const auto fixed = compute_fixed_points(std::max<std::size_t>(threshold, 1024));
            for (const auto& r : classify_basin(fixed, options)) {
                out.emplace_back(r.seed.to_string(), std::string(attractor_name(r.attractor)));
            }
        }
        return out;
    }, py::arg("max_len") = 12, py::arg("steps") = 100, py::arg("threshold") = 64, py::arg("parallel") = true,
       "[(seed, 'even' | 'odd' | 'undecided')] for every seed up to max_len bits.");
}
