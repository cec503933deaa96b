// Copyright 2026 The embcompress Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "embcompress/eval.hpp"
#include "embcompress/probe.hpp"
#include "embcompress/reducers.hpp"
#include "embcompress/store.hpp"

namespace py = pybind11;

namespace embcompress {
namespace {

using Array = Eigen::Ref<const RowMatrix>;

PairDataset MakePairs(const Eigen::Ref<const Eigen::Matrix<
                          Index, Eigen::Dynamic, 2, Eigen::RowMajor>>& index,
                      const std::vector<double>& gold) {
  if (static_cast<std::size_t>(index.rows()) != gold.size()) {
    throw PreconditionError("pairs and gold differ in length");
  }
  PairDataset pairs;
  for (Index i = 0; i < index.rows(); ++i) {
    pairs.records.push_back({index(i, 0), index(i, 1), gold[i]});
  }
  return pairs;
}

}  // namespace
}  // namespace embcompress

PYBIND11_MODULE(_core, m) {
  using namespace embcompress;
  m.doc() = "Dimensionality reduction for sentence embeddings.";

  // Translators registered later are tried first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_ValueError);

  py::class_<ProjectionModel>(m, "Model")
      .def_property_readonly(
          "method",
          [](const ProjectionModel& p) { return std::string(MethodName(p.method())); })
      .def_property_readonly("input_dim", &ProjectionModel::input_dim)
      .def_property_readonly("output_dim", &ProjectionModel::output_dim)
      .def(
          "transform",
          [](const ProjectionModel& p, const Array& x, unsigned threads) {
            return Transform(p, EmbeddingMatrix(RowMatrix(x)), {threads}).values();
          },
          py::arg("x"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>())
      .def("save", [](const ProjectionModel& p,
                      const std::filesystem::path& path) { SaveModel(p, path); })
      .def_static("load", &LoadModel, py::arg("path"))
      .def("__repr__", [](const ProjectionModel& p) {
        return "<Model " + std::string(MethodName(p.method())) + " " +
               std::to_string(p.input_dim()) + "->" +
               std::to_string(p.output_dim()) + ">";
      });

  m.def(
      "fit",
      [](const Array& x, const std::string& method, Index dim,
         std::uint64_t seed, const std::string& kernel, double gamma,
         std::uint32_t degree, double coef0, bool standardize,
         double kpca_jitter, double ae_learning_rate, Index ae_batch_size,
         Index ae_epochs) {
        ReducerConfig cfg;
        cfg.method = ParseMethod(method);
        cfg.target_dim = dim;
        cfg.seed = seed;
        cfg.kernel.kind = ParseKernelKind(kernel);
        cfg.kernel.gamma = gamma;
        cfg.kernel.degree = degree;
        cfg.kernel.coef0 = coef0;
        cfg.standardize = standardize;
        cfg.kpca_jitter = kpca_jitter;
        cfg.ae.learning_rate = ae_learning_rate;
        cfg.ae.batch_size = ae_batch_size;
        cfg.ae.epochs = ae_epochs;
        const EmbeddingMatrix emb{RowMatrix(x)};
        py::gil_scoped_release release;
        return Fit(cfg, emb);
      },
      py::arg("x"), py::arg("method"), py::arg("dim"), py::arg("seed") = 0,
      py::arg("kernel") = "rbf", py::arg("gamma") = 0.0, py::arg("degree") = 3,
      py::arg("coef0") = 1.0, py::arg("standardize") = false,
      py::arg("kpca_jitter") = 0.0, py::arg("ae_learning_rate") = 1e-3,
      py::arg("ae_batch_size") = 256, py::arg("ae_epochs") = 100,
      "Fit a reducer on the rows of x.");

  m.def(
      "spearman",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return Spearman(a, b);
      },
      py::arg("a"), py::arg("b"), "Spearman correlation with average ranks.");
  m.def(
      "average_ranks",
      [](const std::vector<double>& v) { return AverageRanks(v); },
      py::arg("values"));

  m.def(
      "sts_spearman",
      [](const Array& emb_a, const Array& emb_b,
         const Eigen::Ref<const Eigen::Matrix<Index, Eigen::Dynamic, 2,
                                              Eigen::RowMajor>>& pairs,
         const std::vector<double>& gold) {
        return StsSpearman(EmbeddingMatrix(RowMatrix(emb_a)),
                           EmbeddingMatrix(RowMatrix(emb_b)),
                           MakePairs(pairs, gold));
      },
      py::arg("emb_a"), py::arg("emb_b"), py::arg("pairs"), py::arg("gold"),
      "Spearman between per-pair cosine similarity and gold scores.");

  m.def(
      "synth_corpus",
      [](Index n, Index dim, Index intrinsic, double sigma,
         std::uint64_t seed) {
        const SynthCorpus c = SynthesizeCorpus({n, dim, intrinsic, sigma, seed});
        Eigen::Matrix<Index, Eigen::Dynamic, 2, Eigen::RowMajor> index(
            static_cast<Index>(c.pairs.records.size()), 2);
        std::vector<double> gold;
        for (std::size_t i = 0; i < c.pairs.records.size(); ++i) {
          index(static_cast<Index>(i), 0) = c.pairs.records[i].index_a;
          index(static_cast<Index>(i), 1) = c.pairs.records[i].index_b;
          gold.push_back(c.pairs.records[i].gold);
        }
        return std::make_tuple(c.embeddings.values(), index, gold);
      },
      py::arg("n") = 2000, py::arg("dim") = 768, py::arg("intrinsic") = 50,
      py::arg("sigma") = 0.05, py::arg("seed") = 1,
      "Synthetic corpus: (embeddings, pair indices, gold similarities).");

  m.def(
      "load_embeddings",
      [](const std::filesystem::path& path) {
        return LoadEmbeddings(path).values();
      },
      py::arg("path"));
  m.def(
      "save_embeddings",
      [](const Array& x, const std::filesystem::path& path) {
        SaveEmbeddings(EmbeddingMatrix(RowMatrix(x)), path);
      },
      py::arg("x"), py::arg("path"));
}
