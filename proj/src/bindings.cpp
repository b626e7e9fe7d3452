#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <utility>

#include "sri/dataset.hpp"
#include "sri/errors.hpp"
#include "sri/expr.hpp"
#include "sri/pipeline.hpp"
#include "sri/shapley.hpp"
#include "sri/sri.hpp"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_numpy(const sri::Matrix& m) {
  py::array_t<double> out({m.rows, m.cols});
  std::memcpy(out.mutable_data(), m.data.data(), m.data.size() * sizeof(double));
  return out;
}

py::array_t<double> to_numpy(const sri::InteractionTensor& t) {
  py::array_t<double> out({t.observations, t.features, t.features});
  std::memcpy(out.mutable_data(), t.data.data(), t.data.size() * sizeof(double));
  return out;
}

py::array_t<double> to_numpy(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
  return out;
}

sri::Matrix matrix_from_numpy(const DoubleArray& a, const char* what) {
  if (a.ndim() != 2) throw sri::DimensionError(std::string(what) + " must be a 2-d array");
  sri::Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::memcpy(m.data.data(), a.data(), m.data.size() * sizeof(double));
  return m;
}

sri::InteractionTensor tensor_from_numpy(const DoubleArray& a, const char* what) {
  if (a.ndim() != 3 || a.shape(1) != a.shape(2))
    throw sri::DimensionError(std::string(what) + " must be an (m, n, n) array");
  sri::InteractionTensor t(static_cast<std::size_t>(a.shape(0)),
                           static_cast<std::size_t>(a.shape(1)));
  std::memcpy(t.data.data(), a.data(), t.data.size() * sizeof(double));
  return t;
}

std::vector<double> vector_from_numpy(const DoubleArray& a, const char* what) {
  if (a.ndim() != 1) throw sri::DimensionError(std::string(what) + " must be a 1-d array");
  std::vector<double> v(static_cast<std::size_t>(a.shape(0)));
  std::memcpy(v.data(), a.data(), v.size() * sizeof(double));
  return v;
}

}  // namespace

PYBIND11_MODULE(_sri, m) {
  m.doc() = "Exact Shapley attribution and synergy/redundancy/independence decomposition";

  py::register_exception<sri::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<sri::DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<sri::DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<sri::Error>(m, "SriError", PyExc_RuntimeError);

  py::class_<sri::expr::ModelExpr>(m, "ModelExpr")
      .def_property_readonly("n_features", &sri::expr::ModelExpr::feature_count)
      .def(
          "evaluate",
          [](const sri::expr::ModelExpr& self, const DoubleArray& point) {
            return sri::expr::evaluate(self, vector_from_numpy(point, "point"));
          },
          py::arg("point"))
      .def("__str__", [](const sri::expr::ModelExpr& self) { return sri::expr::to_string(self); });

  py::class_<sri::Dataset>(m, "Dataset")
      .def(py::init([](const DoubleArray& values, std::vector<std::string> feature_names) {
             sri::Dataset d;
             d.values = matrix_from_numpy(values, "values");
             d.feature_names = feature_names.empty() ? sri::default_feature_names(d.values.cols)
                                                     : std::move(feature_names);
             if (d.feature_names.size() != d.values.cols)
               throw sri::DimensionError("feature_names length does not match column count");
             return d;
           }),
           py::arg("values"), py::arg("feature_names") = std::vector<std::string>{})
      .def_property_readonly("values", [](const sri::Dataset& d) { return to_numpy(d.values); })
      .def_readonly("feature_names", &sri::Dataset::feature_names)
      .def_property_readonly("m", &sri::Dataset::observations)
      .def_property_readonly("n", &sri::Dataset::features);

  py::class_<sri::BackgroundSet>(m, "BackgroundSet")
      .def(py::init([](const DoubleArray& values) {
             sri::BackgroundSet b;
             b.values = matrix_from_numpy(values, "values");
             return b;
           }),
           py::arg("values"))
      .def_property_readonly("values",
                             [](const sri::BackgroundSet& b) { return to_numpy(b.values); })
      .def_property_readonly("k", &sri::BackgroundSet::size);

  py::class_<sri::SriResult>(m, "SriResult")
      .def_property_readonly("S", [](const sri::SriResult& r) { return to_numpy(r.synergy); })
      .def_property_readonly("R", [](const sri::SriResult& r) { return to_numpy(r.redundancy); })
      .def_property_readonly("I", [](const sri::SriResult& r) { return to_numpy(r.independence); })
      .def_property_readonly("undefined_pairs",
                             [](const sri::SriResult& r) { return r.undefined_pairs; })
      .def_property_readonly("n", [](const sri::SriResult& r) { return r.features; });

  m.def(
      "parse_model",
      [](const std::string& text, int n_features) {
        return sri::expr::parse_model(text, n_features);
      },
      py::arg("text"), py::arg("n_features"),
      "Parse a model expression (features x1..xn, decimal constants, pi, + - * / ^,\n"
      "sin cos exp log sqrt abs) into an immutable ModelExpr.");

  m.def(
      "evaluate",
      [](const sri::expr::ModelExpr& model, const DoubleArray& point) {
        return sri::expr::evaluate(model, vector_from_numpy(point, "point"));
      },
      py::arg("model"), py::arg("point"));

  m.def(
      "load_csv",
      [](const std::string& path, bool has_header) { return sri::load_csv(path, has_header); },
      py::arg("path"), py::arg("has_header") = false);

  m.def("generate_demo_dataset", &sri::generate_demo_dataset, py::arg("m"), py::arg("seed"),
        "Five-feature synthetic dataset: x1, x2, x4, x5 i.i.d. Uniform[0,1], x3 = x2.");

  m.def("sample_background", &sri::sample_background, py::arg("data"), py::arg("k"),
        py::arg("seed"), "k rows sampled without replacement; k == m keeps original order.");

  m.def(
      "coalition_value",
      [](const sri::expr::ModelExpr& model, const DoubleArray& x, sri::CoalitionMask mask,
         const sri::BackgroundSet& bg) {
        return sri::coalition_value(model, vector_from_numpy(x, "x"), mask, bg);
      },
      py::arg("model"), py::arg("x"), py::arg("coalition"), py::arg("background"),
      "Restricted model value for one coalition bitmask (bit i = feature i+1 present).");

  m.def(
      "shap_values",
      [](const sri::expr::ModelExpr& model, const DoubleArray& x, const sri::BackgroundSet& bg) {
        return to_numpy(sri::shap_values(model, vector_from_numpy(x, "x"), bg));
      },
      py::arg("model"), py::arg("x"), py::arg("background"));

  m.def(
      "interaction_values",
      [](const sri::expr::ModelExpr& model, const DoubleArray& x, const sri::BackgroundSet& bg) {
        return to_numpy(sri::interaction_values(model, vector_from_numpy(x, "x"), bg));
      },
      py::arg("model"), py::arg("x"), py::arg("background"));

  m.def(
      "explain_dataset",
      [](const sri::expr::ModelExpr& model, const sri::Dataset& data, const sri::BackgroundSet& bg,
         int workers) {
        const auto ex = sri::explain_dataset(model, data, bg, workers);
        return py::make_tuple(to_numpy(ex.shap), to_numpy(ex.interactions), ex.baseline);
      },
      py::arg("model"), py::arg("data"), py::arg("background"), py::arg("workers") = 1,
      "Returns (shap m x n, interactions m x n x n, baseline).");

  m.def(
      "orthogonalize_interaction",
      [](const DoubleArray& phi_ij, const DoubleArray& phi_ii, const DoubleArray& phi_jj) {
        const auto r = sri::orthogonalize_interaction(vector_from_numpy(phi_ij, "phi_ij"),
                                                      vector_from_numpy(phi_ii, "phi_ii"),
                                                      vector_from_numpy(phi_jj, "phi_jj"));
        return py::make_tuple(to_numpy(r.corrected), r.alpha, r.beta);
      },
      py::arg("phi_ij"), py::arg("phi_ii"), py::arg("phi_jj"),
      "Returns (corrected, alpha, beta) with corrected orthogonal to both main effects.");

  m.def(
      "decompose_all",
      [](const DoubleArray& shap, const DoubleArray& interactions) {
        return sri::decompose_all(matrix_from_numpy(shap, "shap"),
                                  tensor_from_numpy(interactions, "interactions"));
      },
      py::arg("shap"), py::arg("interactions"),
      "S/R/I matrices for every ordered feature pair; undefined_pairs uses 0-based indices.");

  m.def(
      "run_demo",
      [](std::size_t m_obs, sri::RngSeed seed, int workers) {
        const auto r = sri::run_demo(m_obs, seed, workers);
        return py::make_tuple(r.data, to_numpy(r.explanation.shap),
                              to_numpy(r.explanation.interactions), r.sri);
      },
      py::arg("m") = sri::kDemoObservations, py::arg("seed") = sri::kDemoSeed,
      py::arg("workers") = 1,
      "Returns (dataset, shap, interactions, sri_result) for the built-in demo model.");

  m.attr("DEMO_MODEL") = std::string(sri::kDemoModelText);
  m.attr("MAX_FEATURES") = sri::kMaxFeatures;
  m.attr("__version__") = "0.1.0";
}
