#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "monoalign/align.hpp"
#include "monoalign/bench.hpp"
#include "monoalign/tensor_io.hpp"

namespace py = pybind11;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using IndexArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

monoalign::MasConfig make_config(const std::string& engine, double max_neg_val,
                                 int threads) {
  monoalign::MasConfig cfg;
  if (engine == "reference") {
    cfg.engine = monoalign::EngineKind::Reference;
  } else if (engine == "parallel") {
    cfg.engine = monoalign::EngineKind::Parallel;
  } else {
    throw monoalign::ValidationError(monoalign::Errc::InvalidConfig,
                                     "unknown engine name: " + engine);
  }
  cfg.max_neg_val = static_cast<float>(max_neg_val);
  cfg.threads = threads;
  return cfg;
}

struct ArrayDims {
  bool was_2d = false;
  int b = 0;
  int t = 0;
  int s = 0;
};

ArrayDims check_dims(const py::array& values) {
  if (values.ndim() != 2 && values.ndim() != 3) {
    throw monoalign::ValidationError(monoalign::Errc::ShapeMismatch,
                                     "values must be a [T, S] or [B, T, S] array");
  }
  ArrayDims d;
  d.was_2d = values.ndim() == 2;
  d.b = d.was_2d ? 1 : static_cast<int>(values.shape(0));
  d.t = static_cast<int>(values.shape(d.was_2d ? 0 : 1));
  d.s = static_cast<int>(values.shape(d.was_2d ? 1 : 2));
  if (d.b < 1 || d.t < 1 || d.s < 1) {
    throw monoalign::ValidationError(monoalign::Errc::ZeroDim,
                                     "every array dimension must be at least 1");
  }
  return d;
}

std::vector<monoalign::ValidLengths> parse_lengths(const IndexArray& len,
                                                   const ArrayDims& d) {
  const bool flat_pair = len.ndim() == 1 && len.shape(0) == 2 && d.b == 1;
  const bool per_item = len.ndim() == 2 && len.shape(0) == d.b && len.shape(1) == 2;
  if (!flat_pair && !per_item) {
    throw monoalign::ValidationError(
        monoalign::Errc::ShapeMismatch,
        "lengths must have shape [B, 2] (or [2] for a single item)");
  }
  std::vector<monoalign::ValidLengths> out(static_cast<std::size_t>(d.b));
  const std::int64_t* p = len.data();
  for (int i = 0; i < d.b; ++i) {
    const std::int64_t lt = p[2 * i];
    const std::int64_t ls = p[2 * i + 1];
    if (lt < 0 || ls < 0 || lt > d.t || ls > d.s) {
      throw monoalign::ValidationError(
          monoalign::Errc::LengthsOutOfRange,
          "item " + std::to_string(i) + ": lengths must lie in [0, T] x [0, S]");
    }
    out[static_cast<std::size_t>(i)] = {static_cast<std::uint32_t>(lt),
                                        static_cast<std::uint32_t>(ls)};
  }
  return out;
}

/// Copies a [T, S] or [B, T, S] float array into a batch. Remembers whether
/// the input was 2-D so outputs can keep the caller's rank.
monoalign::LikelihoodBatch batch_from_array(const FloatArray& values,
                                            const std::optional<IndexArray>& lengths,
                                            bool* was_2d) {
  const ArrayDims d = check_dims(values);
  *was_2d = d.was_2d;
  monoalign::LikelihoodBatch batch(d.b, d.t, d.s);
  std::memcpy(batch.values.data(), values.data(), batch.values.size() * sizeof(float));
  if (lengths.has_value()) {
    batch.lengths = parse_lengths(*lengths, d);
  }
  return batch;
}

py::array matrix_to_array(const monoalign::AlignmentMatrix& m, bool squeeze) {
  py::array_t<std::uint8_t> out(
      squeeze ? std::vector<py::ssize_t>{m.text_cap, m.speech_cap}
              : std::vector<py::ssize_t>{m.batch, m.text_cap, m.speech_cap});
  std::memcpy(out.mutable_data(), m.values.data(), m.values.size());
  return out;
}

py::array lengths_to_array(const std::vector<monoalign::ValidLengths>& lengths) {
  py::array_t<std::uint32_t> out(
      std::vector<py::ssize_t>{static_cast<py::ssize_t>(lengths.size()), 2});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < view.shape(0); ++i) {
    view(i, 0) = lengths[static_cast<std::size_t>(i)].text;
    view(i, 1) = lengths[static_cast<std::size_t>(i)].speech;
  }
  return out;
}

py::array align_arrays(const FloatArray& values, const std::optional<IndexArray>& lengths,
                       const std::string& engine, double max_neg_val, int threads) {
  bool was_2d = false;
  const monoalign::LikelihoodBatch batch = batch_from_array(values, lengths, &was_2d);
  const monoalign::MasConfig cfg = make_config(engine, max_neg_val, threads);
  monoalign::AlignmentMatrix result;
  {
    py::gil_scoped_release release;
    result = monoalign::align(batch, cfg);
  }
  return matrix_to_array(result, was_2d);
}

py::object align_paths(const FloatArray& values, const std::optional<IndexArray>& lengths,
                       const std::string& engine, double max_neg_val, int threads) {
  bool was_2d = false;
  const monoalign::LikelihoodBatch batch = batch_from_array(values, lengths, &was_2d);
  const monoalign::MasConfig cfg = make_config(engine, max_neg_val, threads);
  monoalign::AlignmentMatrix result;
  {
    py::gil_scoped_release release;
    result = monoalign::align(batch, cfg);
  }
  py::list paths;
  for (int b = 0; b < result.batch; ++b) {
    const monoalign::PathVector path = monoalign::path_from_matrix(result, b);
    py::array_t<std::int32_t> arr(static_cast<py::ssize_t>(path.size()));
    std::memcpy(arr.mutable_data(), path.data(), path.size() * sizeof(std::int32_t));
    paths.append(arr);
  }
  if (was_2d) {
    return paths[0];
  }
  return paths;
}

py::tuple read_tensor_py(const std::string& path) {
  const monoalign::io::Tensor tensor = monoalign::io::read_tensor(path);
  if (const auto* batch = std::get_if<monoalign::LikelihoodBatch>(&tensor)) {
    py::array_t<float> values(
        std::vector<py::ssize_t>{batch->batch, batch->text_cap, batch->speech_cap});
    std::memcpy(values.mutable_data(), batch->values.data(),
                batch->values.size() * sizeof(float));
    return py::make_tuple(values, lengths_to_array(batch->lengths));
  }
  const auto& m = std::get<monoalign::AlignmentMatrix>(tensor);
  return py::make_tuple(matrix_to_array(m, false), lengths_to_array(m.lengths));
}

void write_tensor_py(const std::string& path, const py::array& values,
                     const std::optional<IndexArray>& lengths) {
  const py::dtype dt = values.dtype();
  if (dt.is(py::dtype::of<float>())) {
    bool was_2d = false;
    const monoalign::LikelihoodBatch batch =
        batch_from_array(values.cast<FloatArray>(), lengths, &was_2d);
    monoalign::io::write_tensor(path, batch);
    return;
  }
  if (dt.is(py::dtype::of<std::uint8_t>())) {
    const auto arr = values.cast<py::array_t<std::uint8_t, py::array::c_style>>();
    const ArrayDims d = check_dims(arr);
    monoalign::AlignmentMatrix m(d.b, d.t, d.s);
    std::memcpy(m.values.data(), arr.data(), m.values.size());
    if (lengths.has_value()) {
      m.lengths = parse_lengths(*lengths, d);
    }
    monoalign::io::write_tensor(path, m);
    return;
  }
  throw monoalign::ValidationError(monoalign::Errc::ShapeMismatch,
                                   "values dtype must be float32 or uint8");
}

py::array generate_random_batch_py(int b, int t, int s, std::uint64_t seed) {
  const monoalign::LikelihoodBatch batch =
      monoalign::bench::generate_random_batch(b, t, s, seed);
  py::array_t<float> values(
      std::vector<py::ssize_t>{batch.batch, batch.text_cap, batch.speech_cap});
  std::memcpy(values.mutable_data(), batch.values.data(),
              batch.values.size() * sizeof(float));
  return values;
}

}  // namespace

PYBIND11_MODULE(_monoalign, m) {
  m.doc() = "Batched monotonic alignment on log-likelihood matrices";
  m.attr("__version__") = MONOALIGN_VERSION;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const monoalign::ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const monoalign::IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    }
  });

  m.def("align", &align_arrays, py::arg("values"), py::arg("lengths") = py::none(),
        py::arg("engine") = "parallel",
        py::arg("max_neg_val") = static_cast<double>(monoalign::kDefaultMaxNegVal),
        py::arg("threads") = 0,
        "Align a [T, S] or [B, T, S] float32 likelihood array; returns a uint8 "
        "alignment array of the same shape. Optional lengths ([B, 2] of (t, s)) "
        "mark each item's valid region.");

  m.def("align_paths", &align_paths, py::arg("values"), py::arg("lengths") = py::none(),
        py::arg("engine") = "parallel",
        py::arg("max_neg_val") = static_cast<double>(monoalign::kDefaultMaxNegVal),
        py::arg("threads") = 0,
        "Like align, but returns per-frame text indices: one int32 array per item "
        "(a single array for 2-D input).");

  m.def("read_tensor", &read_tensor_py, py::arg("path"),
        "Read a tensor file; returns (values, lengths) where values is float32 or "
        "uint8 [B, T, S] and lengths is uint32 [B, 2].");

  m.def("write_tensor", &write_tensor_py, py::arg("path"), py::arg("values"),
        py::arg("lengths") = py::none(),
        "Write a float32 (likelihood) or uint8 (alignment) array as a tensor file.");

  m.def("generate_random_batch", &generate_random_batch_py, py::arg("b"), py::arg("t"),
        py::arg("s"), py::arg("seed"),
        "Deterministic uniform [-5, 5] float32 batch of shape [B, T, S].");
}
