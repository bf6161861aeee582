// Command-line front end. Talks to the library only through the C API.
//
// Exit status: 0 success, 2 bad usage or input, 1 numerical failure
// (including a Kaczmarz run that did not converge; its report is still
// written).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdk/pdk.h"

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
};

using MatrixPtr = std::unique_ptr<pdk_matrix, decltype(&pdk_matrix_free)>;
using KernelPtr = std::unique_ptr<pdk_kernel, decltype(&pdk_kernel_free)>;
using StringPtr = std::unique_ptr<char, decltype(&pdk_string_free)>;

void check(pdk_status s, const std::string& context) {
  if (s == PDK_OK) return;
  std::cerr << "pdk: " << context << ": " << pdk_status_string(s) << ": " << pdk_last_error() << '\n';
  throw Failure{pdk_status_is_numerical(s) || s == PDK_ERR_INTERNAL ? kExitNumerical : kExitUsage};
}

MatrixPtr load_matrix(const std::string& path, bool header) {
  pdk_matrix* m = nullptr;
  check(pdk_matrix_read_csv(path.c_str(), header ? 1 : 0, &m), "reading " + path);
  return {m, pdk_matrix_free};
}

KernelPtr load_kernel(const std::string& spec) {
  pdk_kernel* k = nullptr;
  check(pdk_kernel_parse(spec.c_str(), &k), "kernel '" + spec + "'");
  return {k, pdk_kernel_free};
}

void save_text(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "pdk: cannot write " << path << '\n';
    throw Failure{kExitUsage};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive-definite kernel toolkit"};
  app.require_subcommand(1);
  bool header = false;
  app.add_flag("--header", header, "Skip the first line of every CSV input");

  // kernel gram
  auto* kernel = app.add_subcommand("kernel", "Kernel evaluation")->require_subcommand(1);
  auto* gram = kernel->add_subcommand("gram", "Gram matrix over a point set");
  std::string gram_kernel, gram_points, gram_out;
  gram->add_option("--kernel", gram_kernel, "family[:key=value;...]")->required();
  gram->add_option("--points", gram_points, "CSV, one point per row")->required();
  gram->add_option("--out", gram_out, "CSV output")->required();

  // kaczmarz solve
  auto* kacz = app.add_subcommand("kaczmarz", "Kaczmarz iteration")->require_subcommand(1);
  auto* solve = kacz->add_subcommand("solve", "Solve A x = b by row projections");
  std::string k_matrix, k_rhs, k_report, k_solution, k_mode = "cyclic";
  std::optional<std::uint64_t> k_seed;
  double k_tol = 1e-10;
  std::size_t k_sweeps = 10000;
  solve->add_option("--matrix", k_matrix, "CSV matrix A")->required();
  solve->add_option("--rhs", k_rhs, "CSV right-hand side b")->required();
  solve->add_option("--mode", k_mode, "Row selection")->check(CLI::IsMember({"cyclic", "randomized"}));
  solve->add_option("--seed", k_seed, "Seed for randomized selection");
  solve->add_option("--tol", k_tol, "Stop when max |Ax-b| <= tol")->check(CLI::PositiveNumber);
  solve->add_option("--max-sweeps", k_sweeps, "Sweep budget")->check(CLI::PositiveNumber);
  solve->add_option("--report", k_report, "JSON report")->required();
  solve->add_option("--solution", k_solution, "Optional CSV for the final iterate");

  // pca compress
  auto* pca = app.add_subcommand("pca", "Principal component analysis")->require_subcommand(1);
  auto* compress = pca->add_subcommand("compress", "Compress a graymap with k components");
  std::string p_in, p_out, p_report;
  std::size_t p_k = 0;
  compress->add_option("--input", p_in, "PGM input (P2 or P5)")->required();
  compress->add_option("--components", p_k, "Number of components")->required();
  compress->add_option("--out", p_out, "PGM output (P5)")->required();
  compress->add_option("--report", p_report, "JSON report")->required();

  // frame bounds
  auto* frame = app.add_subcommand("frame", "Finite frames")->require_subcommand(1);
  auto* bounds = frame->add_subcommand("bounds", "Optimal frame bounds");
  std::string f_vectors, f_weights, f_report;
  bounds->add_option("--vectors", f_vectors, "CSV, one vector per row")->required();
  bounds->add_option("--weights", f_weights, "CSV, one weight per vector");
  bounds->add_option("--report", f_report, "JSON report")->required();

  // gp sample
  auto* gp = app.add_subcommand("gp", "Gaussian processes")->require_subcommand(1);
  auto* sample = gp->add_subcommand("sample", "Sample a mean-zero process");
  std::string g_kernel, g_points, g_out;
  std::size_t g_n = 0;
  std::uint64_t g_seed = 0;
  sample->add_option("--kernel", g_kernel, "family[:key=value;...]")->required();
  sample->add_option("--points", g_points, "CSV, one point per row")->required();
  sample->add_option("--n", g_n, "Number of realizations")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", g_seed, "Generator seed")->required();
  sample->add_option("--out", g_out, "CSV output, one realization per row")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "pdk: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gram) {
      auto k = load_kernel(gram_kernel);
      auto pts = load_matrix(gram_points, header);
      pdk_matrix* g = nullptr;
      check(pdk_kernel_gram(k.get(), pts.get(), &g), "gram");
      MatrixPtr gp_(g, pdk_matrix_free);
      check(pdk_matrix_write_csv(g, gram_out.c_str()), "writing " + gram_out);
    } else if (*solve) {
      if (k_mode == "randomized" && !k_seed) {
        std::cerr << "pdk: --mode randomized requires --seed\n";
        return kExitUsage;
      }
      auto a = load_matrix(k_matrix, header);
      auto b = load_matrix(k_rhs, header);
      pdk_kaczmarz_options opts;
      pdk_kaczmarz_options_default(&opts);
      opts.tol = k_tol;
      opts.max_sweeps = k_sweeps;
      opts.mode = k_mode == "randomized" ? PDK_ROWS_RANDOMIZED : PDK_ROWS_CYCLIC;
      opts.seed = k_seed.value_or(0);
      pdk_matrix* x = nullptr;
      char* json = nullptr;
      int converged = 0;
      check(pdk_kaczmarz_solve(a.get(), b.get(), &opts, k_solution.empty() ? nullptr : &x, &json,
                               &converged),
            "kaczmarz");
      MatrixPtr xp(x, pdk_matrix_free);
      StringPtr js(json, pdk_string_free);
      save_text(k_report, json);
      if (x) check(pdk_matrix_write_csv(x, k_solution.c_str()), "writing " + k_solution);
      if (!converged) {
        std::cerr << "pdk: kaczmarz: no convergence within " << k_sweeps << " sweeps\n";
        return kExitNumerical;
      }
    } else if (*compress) {
      char* json = nullptr;
      check(pdk_pca_compress_pgm(p_in.c_str(), p_k, p_out.c_str(), &json), "pca");
      StringPtr js(json, pdk_string_free);
      save_text(p_report, json);
    } else if (*bounds) {
      auto v = load_matrix(f_vectors, header);
      MatrixPtr w(nullptr, pdk_matrix_free);
      if (!f_weights.empty()) w = load_matrix(f_weights, header);
      char* json = nullptr;
      check(pdk_frame_bounds(v.get(), w.get(), &json), "frame bounds");
      StringPtr js(json, pdk_string_free);
      save_text(f_report, json);
    } else if (*sample) {
      auto k = load_kernel(g_kernel);
      auto pts = load_matrix(g_points, header);
      pdk_matrix* s = nullptr;
      check(pdk_gp_sample(k.get(), pts.get(), g_n, g_seed, &s), "gp sample");
      MatrixPtr sp(s, pdk_matrix_free);
      check(pdk_matrix_write_csv(s, g_out.c_str()), "writing " + g_out);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
