#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ramchord/chain_embedding.hpp"
#include "ramchord/constants.hpp"
#include "ramchord/extremal.hpp"
#include "ramchord/graph.hpp"
#include "ramchord/graph_io.hpp"
#include "ramchord/preparation.hpp"
#include "ramchord/ramsey.hpp"
#include "ramchord/regular_pairs.hpp"

namespace py = pybind11;
using namespace ramchord;
using nlohmann::json;

namespace {

PyObject* alloc_error_type = nullptr;

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) { return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

SearchLimits limits(std::uint64_t nodes, double seconds, int workers, const std::string& checkpoint) {
  SearchLimits lim;
  lim.max_nodes = nodes;
  lim.max_seconds = seconds;
  lim.workers = workers;
  lim.checkpoint_path = checkpoint;
  return lim;
}

Color color_of(const std::string& s) {
  if (s == "red") return Color::red;
  if (s == "blue") return Color::blue;
  throw InvalidInput("colour must be 'red' or 'blue'");
}

CertifyMode mode_of(const std::string& s) {
  if (s == "structural") return CertifyMode::structural;
  if (s == "search") return CertifyMode::search;
  throw InvalidInput("mode must be 'structural' or 'search'");
}

json verdict_with_stats(const ArrowingVerdict& v, const SimpleGraph& h) {
  auto out = verdict_to_json(v, h);
  out["stats"] = stats_to_json(v.stats);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ramsey numbers of chorded cycles";

  py::register_exception<ResourceLimitExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<ChainEmbedError>(m, "ChainEmbedError", PyExc_RuntimeError);
  // Raised with args (message, kind), kind one of parity, floor, capacity.
  alloc_error_type = py::exception<AllocationError>(m, "AllocationError", PyExc_ValueError).ptr();
  Py_INCREF(alloc_error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const AllocationError& e) {
      PyErr_SetObject(alloc_error_type, py::make_tuple(e.what(), to_string(e.kind())).ptr());
    }
  });

  py::class_<SimpleGraph>(m, "Graph")
      .def(py::init<int>(), py::arg("n") = 0)
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             SimpleGraph g(n);
             for (auto [u, v] : edges) g.add_edge(u, v);
             return g;
           }),
           py::arg("n"), py::arg("edges"))
      .def_static("parse", [](const std::string& spec) { return parse_graph_spec(spec).graph; },
                  "Chord shorthand C<n>(+u-v)*, graph6, or JSON")
      .def_static("from_graph6", [](const std::string& s) { return from_graph6(s); })
      .def("order", &SimpleGraph::order)
      .def("size", &SimpleGraph::size)
      .def("add_edge", &SimpleGraph::add_edge)
      .def("has_edge", &SimpleGraph::has_edge)
      .def("degree", &SimpleGraph::degree)
      .def("max_degree", &SimpleGraph::max_degree)
      .def("neighbors", [](const SimpleGraph& g, int v) {
        const auto nb = g.neighbors(v);
        return std::vector<int>(nb.begin(), nb.end());
      })
      .def("edges", [](const SimpleGraph& g) {
        std::vector<std::pair<int, int>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      })
      .def("graph6", [](const SimpleGraph& g) { return to_graph6(g); })
      .def("complement", &SimpleGraph::complement)
      .def(py::self == py::self)
      .def("__repr__", [](const SimpleGraph& g) {
        return "<Graph n=" + std::to_string(g.order()) + " m=" + std::to_string(g.size()) + ">";
      });

  m.def("cycle_graph", &cycle_graph);
  m.def("path_graph", &path_graph);
  m.def("complete_graph", &complete_graph);
  m.def("chorded_cycle", [](int n, const std::vector<std::pair<int, int>>& chords) {
    std::vector<Edge> d;
    for (auto [u, v] : chords) d.emplace_back(u, v);
    return build_chorded_cycle(n, ChordSet(n, d));
  });

  m.def("is_bipartite", [](const SimpleGraph& g) { return bipartition(g).partition.has_value(); });
  m.def(
      "almost_bipartite_index",
      [](const SimpleGraph& g, int k_max) -> py::object {
        const auto w = almost_bipartite_index(g, k_max);
        if (!w) return py::none();
        return py::make_tuple(w->k, w->removed);
      },
      py::arg("g"), py::arg("k_max") = kDefaultAlmostBipartiteCap,
      "(k, independent set) for the least k <= k_max, or None");
  m.def("find_subgraph", [](const SimpleGraph& pattern, const SimpleGraph& host) -> py::object {
    const auto e = find_subgraph(pattern, host);
    return e ? py::cast(e->map) : py::none();
  });

  py::class_<ColoredCompleteGraph>(m, "Coloring")
      .def(py::init([](int n, const std::string& fill) { return ColoredCompleteGraph(n, color_of(fill)); }),
           py::arg("n"), py::arg("fill") = "blue")
      .def_static("from_red_graph", &ColoredCompleteGraph::from_red_graph)
      .def_static("from_json", [](const py::object& o) { return coloring_from_json(from_py(o)); })
      .def_static("from_hex", &coloring_from_hex)
      .def("order", &ColoredCompleteGraph::order)
      .def("color", [](const ColoredCompleteGraph& c, int u, int v) { return std::string(to_string(c.color(u, v))); })
      .def("set_color", [](ColoredCompleteGraph& c, int u, int v, const std::string& s) { c.set_color(u, v, color_of(s)); })
      .def("subgraph", [](const ColoredCompleteGraph& c, const std::string& s) { return c.subgraph(color_of(s)); })
      .def("to_json", [](const ColoredCompleteGraph& c) { return to_py(coloring_to_json(c)); })
      .def("hex", [](const ColoredCompleteGraph& c) { return coloring_to_hex(c); });

  m.def("mono_copy", [](const ColoredCompleteGraph& c, const SimpleGraph& h) -> py::object {
    const auto copy = mono_copy(c, h);
    if (!copy) return py::none();
    return py::make_tuple(std::string(to_string(copy->color)), copy->embedding.map);
  });

  m.def(
      "arrows",
      [](int n, const SimpleGraph& h, std::uint64_t budget_nodes, double budget_seconds, int workers,
         const std::string& checkpoint) {
        ArrowingVerdict v;
        {
          py::gil_scoped_release release;
          v = arrows(n, h, limits(budget_nodes, budget_seconds, workers, checkpoint));
        }
        return to_py(verdict_with_stats(v, h));
      },
      py::arg("n"), py::arg("pattern"), py::arg("budget_nodes") = 0, py::arg("budget_seconds") = 0.0,
      py::arg("workers") = 1, py::arg("checkpoint") = "");
  m.def(
      "ramsey_number",
      [](const SimpleGraph& h, int n_max, std::uint64_t budget_nodes, double budget_seconds, int workers,
         const std::string& checkpoint) {
        RamseyResult r;
        {
          py::gil_scoped_release release;
          r = ramsey_number(h, n_max, limits(budget_nodes, budget_seconds, workers, checkpoint));
        }
        return to_py({{"r", r.value}, {"lower", verdict_with_stats(r.lower, h)}, {"upper", verdict_with_stats(r.upper, h)}});
      },
      py::arg("pattern"), py::arg("n_max"), py::arg("budget_nodes") = 0, py::arg("budget_seconds") = 0.0,
      py::arg("workers") = 1, py::arg("checkpoint") = "");

  m.def("even_extremal_coloring", &even_extremal_coloring);
  m.def("odd_extremal_coloring", &odd_extremal_coloring);
  m.def("k_almost_extremal_coloring", &k_almost_extremal_coloring);
  m.def("clique_block_coloring", &clique_block_coloring);
  m.def(
      "certify_lower_bound",
      [](const ColoredCompleteGraph& c, const SimpleGraph& h, const std::string& mode) {
        return to_py(certificate_to_json(certify_lower_bound(c, h, mode_of(mode))));
      },
      py::arg("coloring"), py::arg("pattern"), py::arg("mode") = "structural");
  m.def(
      "construction_lower_bound",
      [](const SimpleGraph& h, int k_max) -> py::object {
        const auto b = construction_lower_bound(h, k_max);
        return b ? to_py(construction_bound_to_json(*b)) : py::none();
      },
      py::arg("pattern"), py::arg("k_max") = kDefaultAlmostBipartiteCap);

  m.def(
      "prepare_host",
      [](const SimpleGraph& g, double z, int k_max) {
        const auto dec = prepare_host(g, z, k_max);
        auto out = decomposition_to_json(dec);
        out["violations"] = verify_decomposition(g, dec);
        return to_py(out);
      },
      py::arg("g"), py::arg("z"), py::arg("k_max") = kDefaultAlmostBipartiteCap);
  m.def(
      "random_host_instance",
      [](std::uint64_t seed, int n_min, int n_max) {
        HostInstanceOptions opts;
        opts.n_min = n_min;
        opts.n_max = n_max;
        return random_host_instance(seed, opts);
      },
      py::arg("seed"), py::arg("n_min") = 50, py::arg("n_max") = 2000);

  m.def(
      "paper_constants",
      [](int delta, int k, double c2, double m_reg) {
        const auto p = paper_constants(delta, k, c2, m_reg);
        auto out = parameters_to_json(p);
        out["all_checks_hold"] = p.all_checks_hold();
        return to_py(out);
      },
      py::arg("delta"), py::arg("k"), py::arg("c2") = 1.0, py::arg("m_reg") = 1.0);

  m.def(
      "regularity_check",
      [](const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b, double eps,
         const std::string& mode, std::size_t samples, std::uint64_t seed) {
        const auto md = mode == "exact" ? RegularityMode::exact : RegularityMode::sampled;
        if (mode != "exact" && mode != "sampled") throw InvalidInput("mode must be 'exact' or 'sampled'");
        return to_py(regularity_to_json(regularity_check(g, a, b, eps, md, samples, seed)));
      },
      py::arg("g"), py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("mode") = "exact", py::arg("samples") = 0,
      py::arg("seed") = 0);
  m.def("allocate_chunks", [](const std::vector<int>& lengths, int ell, int cluster_size, double eps) {
    const auto a = allocate_chunks(lengths, ell, cluster_size, eps);
    auto out = allocation_to_json(a);
    out["violations"] = allocation_violations(a, lengths, cluster_size, eps);
    return to_py(out);
  });
  m.def("random_cluster_chain", [](std::uint64_t seed, int ell, int size, double density) {
    return to_py(chain_to_json(random_cluster_chain(seed, ell, size, density)));
  });
  m.def(
      "chain_path_embed",
      [](const py::object& chain_json, const std::vector<int>& lengths, double eps, std::uint64_t seed) {
        const auto chain = chain_from_json(from_py(chain_json));
        const auto specs = typical_anchor_specs(chain, lengths, eps);
        const auto alloc = allocate_chunks(lengths, chain.ell(), chain.cluster_size(), eps);
        ChainEmbedOptions opts;
        opts.seed = seed;
        const auto emb = chain_path_embed(chain, specs, alloc, eps, opts);
        auto out = chain_embedding_to_json(emb);
        out["allocation"] = allocation_to_json(alloc);
        out["violations"] = verify_chain_embedding(chain, specs, alloc, emb);
        return to_py(out);
      },
      py::arg("chain"), py::arg("lengths"), py::arg("eps") = 0.0015, py::arg("seed") = 0,
      "Typical anchors, chunk allocation and embedding, with the verifier's findings");
}
