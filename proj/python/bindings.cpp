#include "solvcert/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace solvcert;

namespace {

// Python ints cross the boundary as decimal strings so nothing is truncated.
Integer to_integer(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw py::type_error("expected an int");
  return Integer(py::str(h).cast<std::string>());
}

py::int_ to_py(const Integer& x) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(x.str().c_str(), nullptr, 10))); }

IntMatrix to_matrix(const py::sequence& rows) {
  if (py::len(rows) == 0) throw py::value_error("matrix must have at least one row");
  const std::size_t cols = py::len(rows[0]);
  IntMatrix m(py::len(rows), cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const py::sequence row = rows[r];
    if (py::len(row) != cols) throw py::value_error("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_integer(row[c]);
  }
  return m;
}

py::list from_matrix(const IntMatrix& m) {
  py::list out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(to_py(m(r, c)));
    out.append(row);
  }
  return out;
}

IntVector to_vector(const py::sequence& v) {
  IntVector out;
  for (const auto& x : v) out.push_back(to_integer(x));
  return out;
}

py::list from_vector(const IntVector& v) {
  py::list out;
  for (const Integer& x : v) out.append(to_py(x));
  return out;
}

CriterionChoice choice_of(const std::string& s) {
  auto c = parse_criterion_choice(s);
  if (!c) throw py::value_error("unknown criterion \"" + s + "\"");
  return *c;
}

}  // namespace

PYBIND11_MODULE(_solvcert, m) {
  m.doc() = "Exact 1-solvability criteria for algebraically slice knots";
  m.attr("__version__") = tool_version();

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<InvalidSeifertMatrix>(m, "InvalidSeifertMatrix", PyExc_ValueError);

  m.def("det", [](const py::sequence& a) { return to_py(det(to_matrix(a))); });
  m.def("smith_normal_form", [](const py::sequence& a) {
    const SNFDecomposition d = smith_normal_form(to_matrix(a));
    py::dict out;
    out["U"] = from_matrix(d.U);
    out["D"] = from_matrix(d.D);
    out["V"] = from_matrix(d.V);
    return out;
  });
  m.def("z_image_membership", [](const py::sequence& a, const py::sequence& t) -> py::object {
    auto x = z_image_membership(to_matrix(a), to_vector(t));
    if (!x) return py::none();
    return from_vector(*x);
  });
  m.def("wedge_power", [](const py::sequence& a, std::size_t grade) {
    return from_matrix(wedge_power(to_matrix(a), grade).entries);
  });
  m.def("difference_operator", [](const py::sequence& a, const py::sequence& b, std::size_t grade) {
    return from_matrix(difference_operator(to_matrix(a), to_matrix(b), grade).entries);
  });
  m.def("alexander_polynomial", [](const py::sequence& seifert) {
    return from_vector(AlexanderPoly::from_seifert(SeifertMatrix::create(to_matrix(seifert))).coefficients());
  });
  m.def("arf", [](const py::sequence& seifert) { return int(arf(SeifertMatrix::create(to_matrix(seifert)))); });

  // Document-level operations exchange JSON text; the Python wrapper maps it to dicts.
  m.def(
      "check_json",
      [](const std::string& spec, const std::string& criterion, std::optional<std::string> timestamp) {
        const KnotSpec s = knot_spec_from_json(Json::parse(spec));
        Certificate c;
        {
          py::gil_scoped_release release;
          c = certify(to_check_input(s), choice_of(criterion));
        }
        return to_json(make_certificate_doc(s, std::move(c), std::move(timestamp))).dump();
      },
      py::arg("spec"), py::arg("criterion") = "auto", py::arg("timestamp") = py::none());
  m.def("verify_json", [](const std::string& doc) {
    const CertificateDoc d = certificate_doc_from_json(Json::parse(doc));
    return d.input_hash == input_hash(d.input) && verify_certificate(d.certificate, to_check_input(d.input));
  });
  m.def("plan_json", [](const std::string& spec) {
    const KnotSpec s = knot_spec_from_json(Json::parse(spec));
    if (!s.seifert || !s.profile) throw SpecError("planning needs a Seifert matrix and a profile");
    const BlockSeifert bk = BlockSeifert::from_matrix(*s.seifert);
    check_profile_against(bk, *s.profile);
    const PlanOutcome res = plan_moves(bk, *s.profile);
    if (const auto* f = std::get_if<PlanFailure>(&res))
      return Json{{"failure", {{"stage", int(f->stage)}, {"reason", f->reason}}}}.dump();
    return Json{{"plan", to_json(std::get<MovePlan>(res))}}.dump();
  });
  m.def("batch_json", [](const std::string& table, std::size_t jobs) {
    std::vector<KnotSpec> specs;
    for (const Json& j : Json::parse(table)) specs.push_back(knot_spec_from_json(j));
    py::gil_scoped_release release;
    return to_json(run_batch(specs, jobs)).dump();
  }, py::arg("table"), py::arg("jobs") = 1);
}
