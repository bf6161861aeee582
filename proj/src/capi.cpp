#include "pdk/pdk.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "pdk/error.hpp"
#include "pdk/frames.hpp"
#include "pdk/gaussian.hpp"
#include "pdk/io.hpp"
#include "pdk/kaczmarz.hpp"
#include "pdk/kernel_spec.hpp"
#include "pdk/pca.hpp"

struct pdk_matrix {
  pdk::Matrix m;
};

struct pdk_kernel {
  pdk::Kernel k;
  std::string family;
};

namespace {

thread_local std::string last_error;

pdk_status to_status(pdk::ErrorCode c) {
  using pdk::ErrorCode;
  switch (c) {
    case ErrorCode::invalid_argument: return PDK_ERR_INVALID_ARGUMENT;
    case ErrorCode::domain: return PDK_ERR_DOMAIN;
    case ErrorCode::not_psd: return PDK_ERR_NOT_PSD;
    case ErrorCode::singular: return PDK_ERR_SINGULAR;
    case ErrorCode::no_convergence: return PDK_ERR_NO_CONVERGENCE;
    case ErrorCode::precondition: return PDK_ERR_PRECONDITION;
    case ErrorCode::io: return PDK_ERR_IO;
    case ErrorCode::format: return PDK_ERR_FORMAT;
  }
  return PDK_ERR_INTERNAL;
}

template <class F>
pdk_status guarded(F&& f) {
  try {
    f();
    return PDK_OK;
  } catch (const pdk::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return PDK_ERR_INTERNAL;
}

void require(const void* p, const char* name) {
  if (!p) throw pdk::Error(pdk::ErrorCode::invalid_argument, std::string(name) + " is NULL");
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Accepts an n×1 column or a 1×n row.
pdk::Vector as_vector(const pdk::Matrix& m, const char* what) {
  if (m.cols() == 1 || m.rows() == 1) return m.data();
  throw pdk::Error(pdk::ErrorCode::domain, std::string(what) + " must be a single row or column");
}

}  // namespace

extern "C" {

const char* pdk_last_error(void) { return last_error.c_str(); }

const char* pdk_status_string(pdk_status s) {
  switch (s) {
    case PDK_OK: return "ok";
    case PDK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PDK_ERR_DOMAIN: return "domain error";
    case PDK_ERR_NOT_PSD: return "not positive semidefinite";
    case PDK_ERR_SINGULAR: return "singular";
    case PDK_ERR_NO_CONVERGENCE: return "no convergence";
    case PDK_ERR_PRECONDITION: return "precondition failed";
    case PDK_ERR_IO: return "i/o error";
    case PDK_ERR_FORMAT: return "format error";
    case PDK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int pdk_status_is_numerical(pdk_status s) {
  return s == PDK_ERR_NOT_PSD || s == PDK_ERR_SINGULAR || s == PDK_ERR_NO_CONVERGENCE ||
         s == PDK_ERR_PRECONDITION;
}

void pdk_string_free(char* s) { std::free(s); }

pdk_status pdk_matrix_create(size_t rows, size_t cols, const double* data, pdk_matrix** out) {
  return guarded([&] {
    require(out, "out");
    if (rows * cols > 0) require(data, "data");
    *out = new pdk_matrix{pdk::Matrix(rows, cols, std::vector<double>(data, data + rows * cols))};
  });
}

pdk_status pdk_matrix_read_csv(const char* path, int skip_header, pdk_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new pdk_matrix{pdk::read_csv(path, skip_header != 0)};
  });
}

pdk_status pdk_matrix_write_csv(const pdk_matrix* m, const char* path) {
  return guarded([&] {
    require(m, "matrix");
    require(path, "path");
    pdk::write_csv(m->m, std::filesystem::path(path));
  });
}

size_t pdk_matrix_rows(const pdk_matrix* m) { return m ? m->m.rows() : 0; }
size_t pdk_matrix_cols(const pdk_matrix* m) { return m ? m->m.cols() : 0; }
const double* pdk_matrix_data(const pdk_matrix* m) { return m ? m->m.data().data() : nullptr; }
void pdk_matrix_free(pdk_matrix* m) { delete m; }

pdk_status pdk_kernel_parse(const char* spec, pdk_kernel** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    auto k = pdk::parse_kernel_spec(spec);
    auto family = k.name();
    *out = new pdk_kernel{std::move(k), std::move(family)};
  });
}

const char* pdk_kernel_family(const pdk_kernel* k) { return k ? k->family.c_str() : ""; }
void pdk_kernel_free(pdk_kernel* k) { delete k; }

pdk_status pdk_kernel_gram(const pdk_kernel* k, const pdk_matrix* points, pdk_matrix** out) {
  return guarded([&] {
    require(k, "kernel");
    require(points, "points");
    require(out, "out");
    auto g = pdk::gram_matrix(k->k, pdk::PointSet::from_rows(points->m));
    *out = new pdk_matrix{g.matrix.matrix()};
  });
}

void pdk_kaczmarz_options_default(pdk_kaczmarz_options* opts) {
  if (!opts) return;
  const pdk::KaczmarzOptions d;
  opts->tol = d.tol;
  opts->max_sweeps = d.max_sweeps;
  opts->mode = PDK_ROWS_CYCLIC;
  opts->seed = d.seed;
}

pdk_status pdk_kaczmarz_solve(const pdk_matrix* a, const pdk_matrix* b,
                              const pdk_kaczmarz_options* opts, pdk_matrix** solution,
                              char** report_json, int* converged) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    pdk::KaczmarzOptions o;
    if (opts) {
      o.tol = opts->tol;
      o.max_sweeps = opts->max_sweeps;
      o.seed = opts->seed;
      switch (opts->mode) {
        case PDK_ROWS_CYCLIC: o.mode = pdk::RowSelection::cyclic; break;
        case PDK_ROWS_RANDOMIZED: o.mode = pdk::RowSelection::randomized; break;
        case PDK_ROWS_UNIFORM: o.mode = pdk::RowSelection::uniform; break;
        default: throw pdk::Error(pdk::ErrorCode::invalid_argument, "unknown row selection mode");
      }
    }
    const pdk::LinearSystem sys(a->m, as_vector(b->m, "right-hand side"));
    auto rep = pdk::solve_classical(sys, o);

    std::string json;
    if (report_json) {
      nlohmann::json j;
      j["iterations"] = rep.iterations;
      j["converged"] = rep.converged;
      j["final_residual"] = rep.final_residual;
      j["residual_history"] = rep.residual_history;
      json = dump(j);
    }
    pdk_matrix* sol = solution ? new pdk_matrix{pdk::Matrix(rep.solution.size(), 1, rep.solution)} : nullptr;
    char* js = nullptr;
    try {
      if (report_json) js = to_c_string(json);
    } catch (...) {
      delete sol;
      throw;
    }
    if (solution) *solution = sol;
    if (report_json) *report_json = js;
    if (converged) *converged = rep.converged ? 1 : 0;
  });
}

pdk_status pdk_pca_compress_pgm(const char* input_path, size_t k, const char* output_path,
                                char** report_json) {
  return guarded([&] {
    require(input_path, "input path");
    require(output_path, "output path");
    const auto img = pdk::read_pgm(input_path);
    const pdk::Matrix x = img.to_matrix();
    if (k < 1 || k > x.cols())
      throw pdk::Error(pdk::ErrorCode::invalid_argument,
                       "components must lie in 1.." + std::to_string(x.cols()) + ", got " +
                           std::to_string(k));
    const auto model = pdk::fit(x);
    const pdk::Matrix rec = pdk::reconstruct(model, pdk::transform(model, x), k);
    const auto rep = pdk::report(model, x, k);
    pdk::write_pgm(pdk::PgmImage::from_matrix(rec, img.maxval), std::filesystem::path(output_path));
    if (report_json) {
      nlohmann::json j;
      j["components"] = rep.components;
      j["mse"] = rep.mse;
      j["compression_ratio"] = rep.compression_ratio;
      j["eigenvalues"] = rep.eigenvalues;
      *report_json = to_c_string(dump(j));
    }
  });
}

pdk_status pdk_frame_bounds(const pdk_matrix* vectors, const pdk_matrix* weights, char** report_json) {
  return guarded([&] {
    require(vectors, "vectors");
    require(report_json, "report_json");
    std::optional<pdk::Vector> w;
    if (weights) w = as_vector(weights->m, "weights");
    const auto fr = pdk::VectorFrame::from_rows(vectors->m, std::move(w));
    const auto b = pdk::frame_bounds(fr);
    nlohmann::json j;
    j["a"] = b.a;
    j["b"] = b.b;
    j["is_frame"] = b.is_frame;
    j["vectors"] = fr.size();
    j["dim"] = fr.dim;
    *report_json = to_c_string(dump(j));
  });
}

pdk_status pdk_gp_sample(const pdk_kernel* k, const pdk_matrix* points, size_t n, uint64_t seed,
                         pdk_matrix** out) {
  return guarded([&] {
    require(k, "kernel");
    require(points, "points");
    require(out, "out");
    auto s = pdk::sample_gp(k->k, pdk::PointSet::from_rows(points->m), {seed, n});
    *out = new pdk_matrix{std::move(s.draws)};
  });
}

}  // extern "C"
