#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "logosym/classify.hpp"
#include "logosym/clustering.hpp"
#include "logosym/corpus.hpp"
#include "logosym/errors.hpp"
#include "logosym/eval.hpp"
#include "logosym/experiment.hpp"
#include "logosym/features.hpp"
#include "logosym/imaging.hpp"
#include "logosym/symbolic.hpp"

namespace py = pybind11;
using namespace logosym;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const std::size_t rows = a.shape(0), cols = a.shape(1);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = a.data()[r * cols + c];
  return m;
}

std::vector<double> to_vector(const DoubleArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

py::array_t<double> from_matrix(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(const std::vector<double>& v) {
  py::array_t<double> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

// H x W gray, H x W x 3 RGB or H x W x 4 RGBA (alpha over white) to RGB.
ImageBuffer to_image(const ByteArray& a) {
  if (a.ndim() != 2 && a.ndim() != 3) throw std::invalid_argument("expected an H x W or H x W x C array");
  const int h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
  const int c = a.ndim() == 2 ? 1 : static_cast<int>(a.shape(2));
  if (c != 1 && c != 3 && c != 4) throw std::invalid_argument("expected 1, 3 or 4 channels");
  ImageBuffer img(w, h, 3);
  const std::uint8_t* p = a.data();
  for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
    for (int ch = 0; ch < 3; ++ch) {
      const int v = p[i * c + (c == 1 ? 0 : ch)];
      if (c == 4) {
        const int alpha = p[i * c + 3];
        img.pixels[i * 3 + ch] = static_cast<std::uint8_t>((v * alpha + 255 * (255 - alpha) + 127) / 255);
      } else {
        img.pixels[i * 3 + ch] = static_cast<std::uint8_t>(v);
      }
    }
  }
  return img;
}

py::array_t<std::uint8_t> from_image(const ImageBuffer& img) {
  py::array_t<std::uint8_t> out({img.height, img.width, img.channels});
  std::copy(img.pixels.begin(), img.pixels.end(), out.mutable_data());
  return out;
}

py::dict outcome_dict(const ClassificationOutcome& o) {
  py::dict d;
  d["predicted_class"] = o.predicted_class;
  d["best_class"] = o.best_class;
  d["best_cluster"] = o.best_cluster;
  d["acceptance_counts"] = o.acceptance_counts;
  d["max_count"] = o.max_count;
  d["tie"] = o.tie;
  d["no_coverage"] = o.no_coverage;
  return d;
}

FeatureTable to_table(const DoubleArray& features, const std::vector<int>& labels,
                      const std::vector<std::string>& class_names) {
  FeatureTable t;
  t.features = to_matrix(features);
  t.labels = labels;
  t.class_names = class_names;
  if (labels.size() != t.features.rows()) throw std::invalid_argument("labels and features differ in length");
  for (std::size_t i = 0; i < labels.size(); ++i) t.paths.push_back("row" + std::to_string(i));
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Logo classification with clustered symbolic interval representatives";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidImage>(m, "InvalidImage", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<FeatureConfig>(m, "FeatureConfig")
      .def(py::init<>())
      .def_readwrite("width", &FeatureConfig::width)
      .def_readwrite("height", &FeatureConfig::height)
      .def_readwrite("grid_cols", &FeatureConfig::grid_cols)
      .def_readwrite("grid_rows", &FeatureConfig::grid_rows)
      .def_readwrite("texture_sigma", &FeatureConfig::texture_sigma)
      .def_readwrite("texture_kernel", &FeatureConfig::texture_kernel)
      .def_property(
          "zernike_orders",
          [](const FeatureConfig& c) {
            std::vector<std::pair<int, int>> out;
            for (const auto& z : c.zernike_orders) out.emplace_back(z.n, z.m);
            return out;
          },
          [](FeatureConfig& c, const std::vector<std::pair<int, int>>& orders) {
            c.zernike_orders.clear();
            for (auto [n, mm] : orders) c.zernike_orders.push_back({n, mm});
          })
      .def_property_readonly("feature_count", &FeatureConfig::feature_count)
      .def("validate", &FeatureConfig::validate);

  m.def("read_image", [](const std::filesystem::path& p) { return from_image(read_image(p)); }, py::arg("path"),
        "Decode a PNG or JPEG file into an H x W x 3 uint8 array.");
  m.def(
      "extract",
      [](const ByteArray& image, const FeatureConfig& cfg) { return from_vector(extract_image(to_image(image), cfg)); },
      py::arg("image"), py::arg("config") = FeatureConfig{},
      "Color, texture and shape features of an image array.");

  py::class_<Normalizer>(m, "Normalizer")
      .def(py::init([](const DoubleArray& mins, const DoubleArray& maxs) {
             return Normalizer(to_vector(mins), to_vector(maxs));
           }),
           py::arg("mins"), py::arg("maxs"))
      .def_static("fit", [](const DoubleArray& train) { return Normalizer::fit(to_matrix(train)); })
      .def("apply",
           [](const Normalizer& n, const DoubleArray& a) -> py::object {
             if (a.ndim() == 1) return from_vector(n.apply(to_vector(a)));
             return from_matrix(n.apply(to_matrix(a)));
           })
      .def_property_readonly("mins", [](const Normalizer& n) { return from_vector(n.mins()); })
      .def_property_readonly("maxs", [](const Normalizer& n) { return from_vector(n.maxs()); });

  m.def(
      "kmeans",
      [](const DoubleArray& points, std::size_t k, std::uint64_t seed, int max_iter, double tol, int restarts) {
        const auto r = kmeans(to_matrix(points), {k, seed, max_iter, tol, restarts});
        py::dict d;
        d["assignments"] = r.assignments;
        d["centroids"] = from_matrix(r.centroids);
        d["sse"] = r.sse;
        d["iterations"] = r.iterations;
        d["sse_history"] = r.sse_history;
        return d;
      },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0, py::arg("max_iter") = 100, py::arg("tol") = 1e-6,
      py::arg("restarts") = 10);

  py::class_<ReferenceMatrix>(m, "ReferenceMatrix")
      .def_property_readonly("size", &ReferenceMatrix::size)
      .def_readonly("dimension", &ReferenceMatrix::dimension)
      .def_readonly("classes", &ReferenceMatrix::classes)
      .def_readonly("clusters_per_class", &ReferenceMatrix::clusters_per_class)
      .def_readonly("class_names", &ReferenceMatrix::class_names)
      .def_property_readonly("class_labels",
                             [](const ReferenceMatrix& r) {
                               std::vector<int> out;
                               for (const auto& rep : r.representatives) out.push_back(rep.class_label);
                               return out;
                             })
      .def_property_readonly("intervals",
                             [](const ReferenceMatrix& r) {
                               py::array_t<double> out({r.size(), r.dimension, std::size_t{2}});
                               double* p = out.mutable_data();
                               for (const auto& rep : r.representatives)
                                 for (const auto& iv : rep.intervals) {
                                   *p++ = iv.lo;
                                   *p++ = iv.hi;
                                 }
                               return out;
                             })
      .def("save", [](const ReferenceMatrix& r, const std::filesystem::path& p) { save_reference(r, p); })
      .def_static("load", [](const std::filesystem::path& p) { return load_reference(p); });

  m.def(
      "build_reference",
      [](const DoubleArray& train, const std::vector<int>& labels, std::size_t classes, std::size_t k,
         std::uint64_t seed, int restarts, const std::vector<std::string>& names) {
        KMeansOptions opt;
        opt.k = k;
        opt.seed = seed;
        opt.restarts = restarts;
        return build_reference(to_matrix(train), labels, classes, opt, names);
      },
      py::arg("train"), py::arg("labels"), py::arg("classes"), py::arg("k"), py::arg("seed") = 0,
      py::arg("restarts") = 10, py::arg("class_names") = std::vector<std::string>{});

  m.def(
      "classify", [](const DoubleArray& s, const ReferenceMatrix& r) { return outcome_dict(classify(to_vector(s), r)); },
      py::arg("sample"), py::arg("reference"));
  m.def(
      "knn1_classify",
      [](const DoubleArray& s, const DoubleArray& train, const std::vector<int>& labels) {
        return knn1_classify(to_vector(s), to_matrix(train), labels);
      },
      py::arg("sample"), py::arg("train"), py::arg("labels"));

  m.def("f_measure", &f_measure, py::arg("precision"), py::arg("recall"));
  m.def(
      "metrics",
      [](const std::vector<std::vector<std::size_t>>& counts, std::optional<std::vector<std::size_t>> sizes) {
        const auto cm = ConfusionMatrix::from_counts(counts);
        const auto r = sizes ? metrics(cm, *sizes) : metrics(cm);
        py::dict d;
        d["accuracy"] = r.accuracy;
        d["precision"] = r.precision;
        d["recall"] = r.recall;
        d["f_measure"] = r.f_measure;
        d["class_precision"] = r.class_precision;
        d["class_recall"] = r.class_recall;
        return d;
      },
      py::arg("confusion"), py::arg("class_sizes") = py::none(),
      "Metrics in percent from a confusion matrix (rows true, columns predicted).");

  m.def(
      "generate_synthetic",
      [](std::size_t n, std::uint64_t seed, int size) {
        const auto c = generate_synthetic(n, seed, size);
        py::list images;
        for (std::size_t i = 0; i < c.size(); ++i) images.append(from_image(c.image(i)));
        return py::make_tuple(images, c.labels(), c.class_names);
      },
      py::arg("n_per_class"), py::arg("seed"), py::arg("size") = 200,
      "Returns (images, labels, class_names).");

  m.def(
      "run_sweep_json",
      [](const std::string& config_text, const DoubleArray& features, const std::vector<int>& labels,
         const std::vector<std::string>& class_names, bool compare) {
        const auto cfg = parse_config(config_text);
        const auto table = to_table(features, labels, class_names);
        const auto report = compare ? compare_models(cfg, table) : run_experiment(cfg, table);
        return report_json(report);
      },
      py::arg("config_text"), py::arg("features"), py::arg("labels"), py::arg("class_names"),
      py::arg("compare") = false);
}
