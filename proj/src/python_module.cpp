// pybind11 bindings: channel sampling, the precoder constructions, the
// figure-of-merit metrics, and the Monte-Carlo BER point. Matrices cross the
// boundary as 2-D complex128 numpy arrays with column k = h_k.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "precoderlab/experiment.hpp"

namespace py = pybind11;
using namespace precoderlab;

namespace {

using NpComplexMatrix = py::array_t<cxd, py::array::c_style | py::array::forcecast>;
using NpComplexVector = py::array_t<cxd, py::array::c_style | py::array::forcecast>;

ChannelSet channel_from_numpy(const NpComplexMatrix& h) {
  if (h.ndim() != 2) throw DimensionMismatchError("H must be a 2-D complex array");
  const auto nt = static_cast<std::size_t>(h.shape(0));
  const auto k_users = static_cast<std::size_t>(h.shape(1));
  if (nt == 0 || k_users == 0)
    throw InvalidDimensionError("H must have at least one row and column");
  ChannelSet ch{nt, k_users, ComplexMatrix(nt, k_users)};
  auto r = h.unchecked<2>();
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t j = 0; j < k_users; ++j)
      ch.h(i, j) = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
  for (std::size_t j = 0; j < k_users; ++j)
    if (norm2(ch.h.col(j)) == 0.0)
      throw InvalidDimensionError("H has an all-zero column");
  return ch;
}

py::array_t<cxd> matrix_to_numpy(const ComplexMatrix& m) {
  py::array_t<cxd> out({m.rows(), m.cols()});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
  return out;
}

py::array_t<cxd> vector_to_numpy(const ComplexVector& v) {
  // the ShapeContainer constructor computes C strides; the ssize_t-count one
  // is broken (zero strides) in pybind11 2.9
  py::array_t<cxd> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) w(static_cast<py::ssize_t>(i)) = v[i];
  return out;
}

ComplexVector vector_from_numpy(const NpComplexVector& v) {
  if (v.ndim() != 1) throw DimensionMismatchError("expected a 1-D complex array");
  auto r = v.unchecked<1>();
  ComplexVector out(static_cast<std::size_t>(v.shape(0)));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = r(static_cast<py::ssize_t>(i));
  return out;
}

Method method_from_token(const std::string& token) {
  const auto m = parse_method(token);
  if (!m) throw ConfigError("unknown method '" + token + "'");
  return *m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "MU-MIMO linear precoding: ZF / RZF / SLNR constructions and "
            "Monte-Carlo link simulation";

  py::register_exception<Error>(m, "PrecoderlabError", PyExc_RuntimeError);

  m.def(
      "sample_channel",
      [](std::size_t nt, std::size_t k_users, std::uint64_t seed,
         std::uint64_t stream) {
        RngStream s(seed, stream);
        return matrix_to_numpy(sample_channel(nt, k_users, s).h);
      },
      py::arg("nt"), py::arg("k_users"), py::arg("seed"), py::arg("stream") = 0,
      "Draw an i.i.d. CN(0,1) channel matrix, reproducible in (seed, stream).");

  m.def(
      "zf_direction",
      [](const NpComplexMatrix& h, std::size_t k) {
        return vector_to_numpy(zf_direction(channel_from_numpy(h), k));
      },
      py::arg("h"), py::arg("k"));

  m.def(
      "rzf_direction",
      [](const NpComplexMatrix& h, std::size_t k, double alpha) {
        return vector_to_numpy(rzf_direction(channel_from_numpy(h), k, alpha));
      },
      py::arg("h"), py::arg("k"), py::arg("alpha"));

  m.def(
      "slnr_closed_form",
      [](const NpComplexMatrix& h, std::size_t k, double sigma2) {
        const SlnrSolution s = slnr_closed_form(channel_from_numpy(h), k, sigma2);
        return py::make_tuple(vector_to_numpy(s.w), s.gamma, s.lambda);
      },
      py::arg("h"), py::arg("k"), py::arg("sigma2") = 1.0,
      "Returns (w, gamma, lambda).");

  m.def(
      "slnr_eig",
      [](const NpComplexMatrix& h, std::size_t k, double sigma2) {
        return vector_to_numpy(slnr_eig(channel_from_numpy(h), k, sigma2));
      },
      py::arg("h"), py::arg("k"), py::arg("sigma2") = 1.0);

  m.def(
      "build_precoder_matrix",
      [](const NpComplexMatrix& h, const std::string& method, double sigma2,
         double alpha) {
        return matrix_to_numpy(build_precoder_matrix(channel_from_numpy(h),
                                                     method_from_token(method),
                                                     sigma2, alpha)
                                   .columns);
      },
      py::arg("h"), py::arg("method"), py::arg("sigma2") = 1.0,
      py::arg("alpha") = 1.0);

  m.def(
      "alignment",
      [](const NpComplexVector& w1, const NpComplexVector& w2) {
        return alignment(vector_from_numpy(w1), vector_from_numpy(w2));
      },
      py::arg("w1"), py::arg("w2"),
      "|w1^H w2| for unit vectors; 1 means equal up to phase.");

  m.def(
      "canonical_phase",
      [](const NpComplexVector& w) {
        return vector_to_numpy(canonical_phase(vector_from_numpy(w)));
      },
      py::arg("w"));

  m.def(
      "slnr_value",
      [](const NpComplexMatrix& h, std::size_t k, const NpComplexVector& w,
         double sigma2) {
        return slnr_value(channel_from_numpy(h), k, vector_from_numpy(w), sigma2);
      },
      py::arg("h"), py::arg("k"), py::arg("w"), py::arg("sigma2") = 1.0);

  m.def(
      "sum_rate",
      [](const NpComplexMatrix& h, const NpComplexMatrix& w,
         const std::string& method, double sigma2, double total_power) {
        const ChannelSet ch = channel_from_numpy(h);
        PrecoderMatrix pm;
        pm.method = method_from_token(method);
        pm.columns = channel_from_numpy(w).h;
        const NoisePowerModel pw =
            NoisePowerModel::equal_allocation(sigma2, total_power, ch.k_users);
        return sum_rate(ch, pm, pw);
      },
      py::arg("h"), py::arg("w"), py::arg("method") = "zf",
      py::arg("sigma2") = 1.0, py::arg("total_power") = 1.0,
      "Shannon sum rate with equal power allocation.");

  m.def(
      "simulate_ber_point",
      [](std::size_t nt, std::size_t k_users, const std::string& method,
         double snr_db, std::uint64_t min_bits, std::uint64_t max_bits,
         std::uint64_t seed, double sigma2, std::optional<double> alpha,
         int threads) {
        BerPointConfig cfg;
        cfg.nt = nt;
        cfg.k_users = k_users;
        cfg.method = method_from_token(method);
        cfg.snr_db = snr_db;
        cfg.min_bits = min_bits;
        cfg.max_bits = max_bits;
        cfg.seed = seed;
        cfg.sigma2 = sigma2;
        cfg.alpha = alpha;
        cfg.threads = threads;
        const BerEstimate est = simulate_ber_point(cfg);
        py::dict d;
        d["snr_db"] = est.snr_db;
        d["method"] = std::string(method_token(est.method));
        d["bit_errors"] = est.bit_errors;
        d["bits_sent"] = est.bits_sent;
        d["ber"] = est.ber;
        d["nt"] = est.nt;
        d["k_users"] = est.k_users;
        d["seed"] = est.seed;
        return d;
      },
      py::arg("nt"), py::arg("k_users"), py::arg("method"), py::arg("snr_db"),
      py::arg("min_bits") = 100000, py::arg("max_bits") = 10000000,
      py::arg("seed") = 0, py::arg("sigma2") = 1.0,
      py::arg("alpha") = std::nullopt, py::arg("threads") = 1);

  m.def(
      "certify_equivalence",
      [](std::size_t nt, std::size_t k_users, std::int64_t trials, double sigma2,
         std::uint64_t seed, int threads) {
        ExperimentConfig cfg;
        cfg.command = Command::Equiv;
        cfg.nt = nt;
        cfg.k_users = k_users;
        cfg.trials = trials;
        cfg.sigma2 = sigma2;
        cfg.master_seed = seed;
        cfg.threads = threads;
        const auto [rows, summary] = run_equiv(cfg);
        py::dict d;
        d["min_alignment_slnr_rzf"] = summary.min_alignment_slnr_rzf;
        d["min_alignment_eig_closed"] = summary.min_alignment_eig_closed;
        d["max_lambda_rel_err"] = summary.max_lambda_rel_err;
        d["pass"] = summary.pass;
        return d;
      },
      py::arg("nt"), py::arg("k_users"), py::arg("trials") = 1000,
      py::arg("sigma2") = 1.0, py::arg("seed") = 1, py::arg("threads") = 1,
      "Random-channel certification that SLNR == RZF(alpha=sigma2).");

  m.attr("__version__") = "0.1.0";
}
