#include <coxmask/coxeter.hpp>
#include <coxmask/io.hpp>
#include <coxmask/masks.hpp>
#include <coxmask/matching.hpp>
#include <coxmask/presets.hpp>
#include <coxmask/relative.hpp>
#include <coxmask/verify.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace coxmask;

namespace {

using SystemPtr = std::shared_ptr<const CoxeterSystem>;

// Elements keep their system alive from Python.
struct PyElement {
  SystemPtr sys;
  Element value;
};

struct PyGroup {
  SystemPtr sys;

  // Words come in as "2 1 3", "s2s1" or [2, 1, 3].
  Word word(const py::object& obj) const {
    if (py::isinstance<py::str>(obj)) return parse_word(obj.cast<std::string>(), sys->rank());
    Word w = obj.cast<Word>();
    for (Gen g : w) sys->check_generator(g);
    return w;
  }

  Element element(const py::object& obj) const {
    if (py::isinstance<PyElement>(obj)) {
      const auto& e = obj.cast<const PyElement&>();
      if (e.sys != sys) throw InputError("element belongs to a different group");
      return e.value;
    }
    return sys->product_of_word(word(obj));
  }

  PyElement wrap(Element e) const { return {sys, std::move(e)}; }

  // Explicit expression if given, else the word of w when it is a reduced
  // word, else canonical_word(w).
  ReducedExpression expression_for(const py::object& w, const py::object& expr) const {
    const Element we = element(w);
    if (!expr.is_none()) {
      ReducedExpression e = ReducedExpression::from_word(*sys, word(expr));
      if (!(e.element() == we)) throw InputError("expression does not spell w");
      return e;
    }
    if (!py::isinstance<PyElement>(w)) {
      Word typed = word(w);
      if (static_cast<int>(typed.size()) == we.length()) {
        return ReducedExpression::from_word(*sys, std::move(typed));
      }
    }
    return canonical_word(we);
  }
};

py::dict matching_dict(const Matching& m) {
  py::list pairs;
  for (const auto& p : m.pairs) {
    py::dict d;
    d["upper"] = p.upper_word;
    d["lower"] = p.lower_word;
    if (p.move) {
      d["position"] = p.move->position;
      d["rule"] = static_cast<int>(p.move->rule);
    }
    if (p.upper_mask) d["upper_mask"] = format_relative_mask(*p.upper_mask);
    if (p.lower_mask) d["lower_mask"] = format_relative_mask(*p.lower_mask);
    pairs.append(d);
  }
  py::dict out;
  out["pairs"] = pairs;
  out["unmatched"] = m.unmatched_words;
  return out;
}

}  // namespace

PYBIND11_MODULE(_coxmask, m) {
  m.doc() = "Bruhat intervals, relative masks and the acyclic matching they induce";

  static py::exception<Error> base(m, "Error");
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<PrecisionError>(m, "PrecisionError", base);
  py::register_exception<ResourceError>(m, "ResourceError", base);
  py::register_exception<OrderingError>(m, "OrderingError", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<IntegrityError>(m, "IntegrityError", base);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<NoMoveError>(m, "NoMoveError", base);

  m.def("preset_names", &preset_names);

  py::class_<PyElement>(m, "Element")
      .def_property_readonly("length", [](const PyElement& e) { return e.value.length(); })
      .def_property_readonly("word",
                             [](const PyElement& e) { return canonical_letters(e.value); })
      .def("right_descents",
           [](const PyElement& e) { return descent_set(e.value, Side::right); })
      .def("left_descents", [](const PyElement& e) { return descent_set(e.value, Side::left); })
      .def("inverse", [](const PyElement& e) { return PyElement{e.sys, e.value.inverse()}; })
      .def("__mul__",
           [](const PyElement& a, const PyElement& b) {
             if (a.sys != b.sys) throw InputError("elements belong to different groups");
             return PyElement{a.sys, a.value * b.value};
           })
      .def("__eq__",
           [](const PyElement& a, const PyElement& b) {
             return a.sys == b.sys && a.value == b.value;
           })
      .def("__le__",
           [](const PyElement& a, const PyElement& b) { return bruhat_leq(a.value, b.value); })
      .def("__hash__",
           [](const PyElement& e) {
             return py::hash(py::tuple(py::cast(canonical_letters(e.value))));
           })
      .def("__str__", [](const PyElement& e) { return format_element(e.value); })
      .def("__repr__",
           [](const PyElement& e) { return "Element('" + format_element(e.value) + "')"; });

  py::class_<PyGroup>(m, "Group")
      .def(py::init([](const std::string& group, std::optional<int> max_length) {
             return PyGroup{CoxeterSystem::create(
                 resolve_group(group), max_length.value_or(CoxeterSystem::default_max_length()))};
           }),
           py::arg("group"), py::arg("max_length") = py::none(),
           "A preset name (A3, B3, H3, I2_5, tA2, ...) or a Coxeter matrix file.")
      .def_static(
          "from_matrix",
          [](const std::vector<std::vector<int>>& rows, std::optional<int> max_length) {
            return PyGroup{CoxeterSystem::create(
                CoxeterMatrix(rows), max_length.value_or(CoxeterSystem::default_max_length()))};
          },
          py::arg("rows"), py::arg("max_length") = py::none(), "Entries 0 mean infinity.")
      .def_property_readonly("rank", [](const PyGroup& g) { return g.sys->rank(); })
      .def_property_readonly("exact", [](const PyGroup& g) {
        return g.sys->tier() == ScalarTier::exact_integer;
      })
      .def("element", [](const PyGroup& g, const py::object& w) { return g.wrap(g.element(w)); })
      .def("identity", [](const PyGroup& g) { return g.wrap(g.sys->identity()); })
      .def("is_reduced",
           [](const PyGroup& g, const py::object& w) {
             const Word word = g.word(w);
             return g.sys->product_of_word(word).length() == static_cast<int>(word.size());
           })
      .def("leq", [](const PyGroup& g, const py::object& x,
                     const py::object& w) { return bruhat_leq(g.element(x), g.element(w)); })
      .def("coatoms",
           [](const PyGroup& g, const py::object& w) {
             std::vector<Word> out;
             for (const auto& c : coatoms(g.element(w))) out.push_back(canonical_letters(c));
             return out;
           })
      .def("elements",
           [](const PyGroup& g, int max_length) {
             std::vector<Word> out;
             for (const auto& x : enumerate_elements(*g.sys, max_length)) {
               out.push_back(canonical_letters(x));
             }
             return out;
           },
           py::arg("max_length"))
      .def("interval",
           [](const PyGroup& g, const py::object& y, const py::object& w) {
             const auto iv = enumerate_interval(g.element(y), g.element(w));
             std::vector<Word> words;
             for (std::size_t i = 0; i < iv.size(); ++i) words.push_back(iv.word(i));
             std::vector<std::pair<std::size_t, std::size_t>> edges;
             for (const auto& e : iv.cover_edges()) edges.emplace_back(e.upper, e.lower);
             py::dict out;
             out["elements"] = words;
             out["covers"] = edges;
             return out;
           })
      .def(
          "constant_mask",
          [](const PyGroup& g, const py::object& word, const py::object& x) {
            const auto expr = ReducedExpression::from_word(*g.sys, g.word(word));
            const auto cm = greedy_constant_mask(expr, g.element(x));
            std::vector<Word> remainders;
            for (const auto& r : cm.trace.remainders) remainders.push_back(canonical_letters(r));
            py::dict out;
            out["bits"] = cm.mask.bits();
            out["remainders"] = remainders;  // remainders[i-1] = r(i)
            return out;
          },
          py::arg("word"), py::arg("x"))
      .def(
          "relative_masks",
          [](const PyGroup& g, const py::object& y, const py::object& w, const py::object& expr) {
            const auto e = g.expression_for(w, expr);
            std::vector<std::pair<Word, std::string>> out;
            for (const auto& im : interval_as_relative_masks(g.element(y), e)) {
              out.emplace_back(canonical_letters(im.element), format_relative_mask(im.mask));
            }
            return out;
          },
          py::arg("y"), py::arg("w"), py::arg("expr") = py::none())
      .def(
          "interval_table",
          [](const PyGroup& g, const py::object& y, const py::object& w, const py::object& expr) {
            const auto e = g.expression_for(w, expr);
            return format_interval_table(interval_as_relative_masks(g.element(y), e), e);
          },
          py::arg("y"), py::arg("w"), py::arg("expr") = py::none())
      .def(
          "match",
          [](const PyGroup& g, const py::object& y, const py::object& w, const py::object& expr) {
            return matching_dict(match_interval(g.element(y), g.expression_for(w, expr)));
          },
          py::arg("y"), py::arg("w"), py::arg("expr") = py::none())
      .def(
          "rw_match",
          [](const PyGroup& g, const py::object& y, const py::object& w, const py::object& expr) {
            return matching_dict(rw_match(g.element(y), g.expression_for(w, expr)));
          },
          py::arg("y"), py::arg("w"), py::arg("expr") = py::none())
      .def(
          "mobius",
          [](const PyGroup& g, const py::object& y, const py::object& w, const py::object& expr) {
            const auto e = g.expression_for(w, expr);
            const auto iv = enumerate_interval(g.element(y), e.element());
            const auto report = mobius_via_matching(iv, match_interval(iv, e));
            py::dict out;
            out["mu"] = mobius_oracle(iv);
            out["survivor_sum"] = report.survivor_sum;
            return out;
          },
          py::arg("y"), py::arg("w"), py::arg("expr") = py::none())
      .def(
          "is_acyclic",
          [](const PyGroup& g, const py::object& y, const py::object& w, const py::object& expr) {
            const auto e = g.expression_for(w, expr);
            const auto iv = enumerate_interval(g.element(y), e.element());
            return acyclicity_check(iv, match_interval(iv, e)).acyclic;
          },
          py::arg("y"), py::arg("w"), py::arg("expr") = py::none())
      .def(
          "dot",
          [](const PyGroup& g, const py::object& y, const py::object& w, const py::object& expr) {
            const auto e = g.expression_for(w, expr);
            const auto iv = enumerate_interval(g.element(y), e.element());
            return export_dot(iv, match_interval(iv, e));
          },
          py::arg("y"), py::arg("w"), py::arg("expr") = py::none())
      .def(
          "verify",
          [](const PyGroup& g, int max_length, const std::string& checks, int jobs) {
            SuiteConfig config;
            config.system = g.sys;
            config.max_length = max_length;
            config.checks = parse_check_list(checks);
            config.jobs = jobs;
            SuiteReport report;
            {
              py::gil_scoped_release release;
              report = run_suite(config);
            }
            return py::module_::import("json").attr("loads")(report.to_json().dump());
          },
          py::arg("max_length"), py::arg("checks") = "all", py::arg("jobs") = 1);
}
