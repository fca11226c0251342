#include <optional>
#include <string>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opmaj/errors.hpp"
#include "opmaj/majorization.hpp"
#include "opmaj/orthopoly.hpp"
#include "opmaj/recurrence.hpp"
#include "opmaj/spectra.hpp"
#include "opmaj/verify.hpp"

namespace py = pybind11;
using namespace opmaj;

namespace {

py::array_t<double> to_numpy(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

py::array_t<double> to_numpy(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Theorem parse_theorem(const std::string& name) {
  if (name == "A") return Theorem::A;
  if (name == "B") return Theorem::B;
  if (name == "C") return Theorem::C;
  throw ParameterError("theorem must be A, B or C");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orthogonal polynomial zeros and doubly stochastic matrices";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DepthError>(m, "DepthError", PyExc_IndexError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  py::class_<RecurrenceScheme>(m, "Scheme")
      .def_property_readonly("family", [](const RecurrenceScheme& s) { return std::string(family_name(s.family())); })
      .def_property_readonly("alpha", [](const RecurrenceScheme& s) { return s.params().alpha; })
      .def_property_readonly("beta", [](const RecurrenceScheme& s) { return s.params().beta; })
      .def_property_readonly("depth", &RecurrenceScheme::max_index)
      .def_property_readonly("a", [](const RecurrenceScheme& s) {
        return std::vector<double>(s.a_values().begin(), s.a_values().end());
      }, "a_1..a_N")
      .def_property_readonly("b", [](const RecurrenceScheme& s) {
        return std::vector<double>(s.b_values().begin(), s.b_values().end());
      }, "b_0..b_N")
      .def("shifted", [](const RecurrenceScheme& s, std::size_t k) { return shifted(s, k); }, py::arg("k"))
      .def("__repr__", [](const RecurrenceScheme& s) {
        return "<Scheme " + std::string(family_name(s.family())) + " depth=" + std::to_string(s.max_index()) + ">";
      });

  m.def("classical_scheme",
        [](const std::string& family, std::size_t depth, double alpha, double beta) {
          return classical_scheme(parse_family(family), {alpha, beta}, depth);
        },
        py::arg("family"), py::arg("depth"), py::arg("alpha") = 0.0, py::arg("beta") = 0.0);
  m.def("from_sequences", &from_sequences, py::arg("a"), py::arg("b"),
        "a holds a_1, a_2, ...; b holds b_0, b_1, ...");

  m.def("zeros",
        [](const RecurrenceScheme& s, std::size_t n) {
          return to_numpy(eigen_decompose(jacobi_matrix(s, n)).eigenvalues);
        },
        py::arg("scheme"), py::arg("n"), "Zeros of p_n, ascending.");
  m.def("gauss_rule",
        [](const RecurrenceScheme& s, std::size_t n) {
          const QuadratureRule r = gauss_rule(s, n);
          return py::make_tuple(to_numpy(r.nodes), to_numpy(r.weights));
        },
        py::arg("scheme"), py::arg("n"), "(nodes, weights) of the n-point Gauss rule.");

  m.def("matrix",
        [](const RecurrenceScheme& s, const std::string& theorem, std::size_t n, std::optional<std::size_t> k,
           const std::string& route) {
          const EntryRoute r = route == "poly" ? EntryRoute::Polynomial : EntryRoute::Eigenvector;
          if (route != "poly" && route != "eigen") throw ParameterError("route must be eigen or poly");
          const Theorem t = parse_theorem(theorem);
          if ((t == Theorem::C) != k.has_value()) throw ParameterError("k is required for C and only for C");
          StochasticMatrixResult res = t == Theorem::A ? matrix_A(s, n, r)
                                       : t == Theorem::B ? matrix_B(s, n, r)
                                                         : matrix_C(s, n, *k, r);
          py::dict d;
          d["theorem"] = theorem;
          d["n"] = res.n;
          d["k"] = res.k;
          d["matrix"] = to_numpy(res.entries);
          d["source"] = to_numpy(res.source);
          d["target"] = to_numpy(res.target);
          d["row_sum_err"] = res.row_sum_err;
          d["col_sum_err"] = res.col_sum_err;
          d["relation_err"] = res.relation_err;
          return d;
        },
        py::arg("scheme"), py::arg("theorem"), py::arg("n"), py::arg("k") = py::none(),
        py::arg("route") = "eigen");

  m.def("check_doubly_stochastic",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> a, double tol) {
          if (a.ndim() != 2) throw ParameterError("expected a 2-d array");
          Matrix mat(a.shape(0), a.shape(1));
          for (std::size_t i = 0; i < mat.rows(); ++i) {
            for (std::size_t j = 0; j < mat.cols(); ++j) mat(i, j) = a.at(i, j);
          }
          const StochasticCheck c = check_doubly_stochastic(mat, tol);
          py::dict d;
          d["ok"] = c.ok;
          d["row_sum_err"] = c.row_sum_err;
          d["col_sum_err"] = c.col_sum_err;
          d["min_entry"] = c.min_entry;
          return d;
        },
        py::arg("matrix"), py::arg("tol") = 1e-10);

  m.def("check_majorization",
        [](const std::vector<double>& x, const std::vector<double>& y, double tol) {
          const MajorizationCertificate c = check_majorization(x, y, tol);
          py::dict d;
          d["holds"] = c.holds;
          d["min_margin"] = c.min_margin();
          d["total_residual"] = c.total_residual;
          d["partial_margins"] = c.partial_margins;
          return d;
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-10, "Certificate for x majorized by y.");

  m.def("verify",
        [](const RecurrenceScheme& s, std::size_t n_max, unsigned threads) {
          VerifyOptions opt;
          opt.n_max = n_max;
          opt.threads = threads;
          VerifyReport r;
          {
            py::gil_scoped_release release;
            r = verify_scheme(s, opt);
          }
          py::list failures;
          for (const auto& f : r.failures) {
            py::dict d;
            d["n"] = f.n;
            d["k"] = f.k;
            d["theorem"] = f.theorem;
            d["check"] = f.check;
            d["value"] = f.value;
            d["limit"] = f.limit;
            failures.append(d);
          }
          py::dict d;
          d["family"] = r.family;
          d["n_max"] = r.n_max;
          d["cases"] = r.cases;
          d["checks"] = r.checks;
          d["passed"] = r.passed();
          d["failures"] = failures;
          return d;
        },
        py::arg("scheme"), py::arg("n_max") = 40, py::arg("threads") = 0);
}
