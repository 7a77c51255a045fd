#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bienayme/construct.hpp"
#include "bienayme/experiments.hpp"
#include "bienayme/scaling.hpp"

namespace py = pybind11;
using namespace bienayme;

namespace {

OffspringDist dist_from(const std::string& arg) {
    auto names = preset_names();
    for (auto& n : names)
        if (n == arg) return preset(arg);
    return load_spec(arg);
}

py::dict tree_stats(const PlaneTree& t) {
    py::dict out;
    out["size"] = t.size();
    out["height"] = height(t);
    out["width"] = width_profile(t).width;
    out["max_degree"] = max_degree(t).delta;
    out["bfs_degrees"] = t.bfs_degrees();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "conditioned Bienayme trees";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<SamplerError>(m, "SamplerError", PyExc_RuntimeError);
    py::register_exception<ConstructError>(m, "ConstructError", PyExc_ValueError);

    py::class_<OffspringDist>(m, "OffspringDist")
        .def("pmf", &OffspringDist::pmf)
        .def("tail", &OffspringDist::tail)
        .def("tail_moment", &OffspringDist::tail_moment)
        .def("mean", &OffspringDist::mean)
        .def("critical", &OffspringDist::critical)
        .def("span", &OffspringDist::span)
        .def("feasible", &OffspringDist::feasible)
        .def("ell", &OffspringDist::ell)
        .def("pgf", &OffspringDist::pgf)
        .def("to_json", &OffspringDist::to_json)
        .def_property_readonly("kind", &OffspringDist::kind);

    m.def("load", &dist_from, py::arg("spec"), "preset name or JSON distribution spec");
    m.def("preset_names", &preset_names);

    m.def("a_n", &a_n);
    m.def("b_n", &b_n);
    m.def("h_n", &h_n);
    m.def("Q_table", &Q_table);

    m.def(
        "sample",
        [](const OffspringDist& d, i64 n, std::uint64_t seed, std::uint64_t stream, const std::string& sampler,
           i64 max_tries) {
            Philox rng(seed, stream);
            SampleOutcome o = parse_sampler(sampler) == SamplerTag::exact ? sample_Tn_exact(d, n, rng, max_tries)
                                                                         : sample_Tn_prime(d, n, rng);
            auto out = tree_stats(o.tree);
            out["tries"] = o.tries;
            out["sentinel"] = o.sentinel;
            return out;
        },
        py::arg("dist"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0, py::arg("sampler") = "exact",
        py::arg("max_tries") = 1'000'000);

    m.def(
        "encode",
        [](const std::vector<i64>& bfs_degrees, const std::string& order) {
            return encode(PlaneTree::from_bfs_degrees(bfs_degrees), parse_order(order)).s;
        },
        py::arg("bfs_degrees"), py::arg("order") = "bfs");
    m.def(
        "decode",
        [](const std::vector<i64>& path, const std::string& order) {
            return decode(LatticePath(path), parse_order(order)).bfs_degrees();
        },
        py::arg("path"), py::arg("order") = "bfs");
    m.def("vervaat", [](const std::vector<i64>& bridge) {
        auto r = vervaat(LatticePath(bridge));
        return py::make_tuple(r.excursion.s, r.m);
    });

    m.def("count_Sd", &count_Sd);
    m.def("ff_decode", [](const FFSequence& v, const DegreeSequence& d) {
        auto t = ff_decode(v, d);
        return py::make_tuple(t.root, t.edges());
    });

    m.def(
        "construct",
        [](const std::string& f, int K, double safety) { return build_short_fat(Growth::parse(f), K, safety).to_json(); },
        py::arg("f") = "power:0.5", py::arg("K") = 4, py::arg("safety") = 1.1);

    m.def("stochorder", [](const DegreeSequence& d1, const DegreeSequence& d2) {
        auto r = stochorder(d1, d2);
        return py::make_tuple(std::string(to_string(r.skew)), r.eh1, r.eh2, r.consistent);
    });
}
