// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdk/pdk.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pdk_capi_test";
  fs::create_directories(dir);
  return dir / name;
}

pdk_matrix* make(std::size_t r, std::size_t c, std::vector<double> v) {
  pdk_matrix* m = nullptr;
  REQUIRE(pdk_matrix_create(r, c, v.data(), &m) == PDK_OK);
  return m;
}

nlohmann::json take_json(char* s) {
  auto j = nlohmann::json::parse(s);
  pdk_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("status strings and error reporting") {
  CHECK(std::string(pdk_status_string(PDK_OK)) == "ok");
  CHECK(std::string(pdk_status_string(PDK_ERR_NOT_PSD)) == "not positive semidefinite");
  CHECK(pdk_status_is_numerical(PDK_ERR_SINGULAR));
  CHECK_FALSE(pdk_status_is_numerical(PDK_ERR_FORMAT));
  pdk_kernel* k = nullptr;
  CHECK(pdk_kernel_parse("cosine:w=1", &k) == PDK_ERR_INVALID_ARGUMENT);
  CHECK(k == nullptr);
  CHECK(std::string(pdk_last_error()).find("cosine") != std::string::npos);
  CHECK(pdk_kernel_parse(nullptr, &k) == PDK_ERR_INVALID_ARGUMENT);
  pdk_matrix* m = nullptr;
  CHECK(pdk_matrix_read_csv("/nonexistent/x.csv", 0, &m) == PDK_ERR_IO);
}

TEST_CASE("matrices and CSV") {
  pdk_matrix* m = make(2, 3, {1, 2, 3, 4, 5, 6.5});
  CHECK(pdk_matrix_rows(m) == 2);
  CHECK(pdk_matrix_cols(m) == 3);
  CHECK(pdk_matrix_data(m)[5] == 6.5);
  const auto path = scratch("m.csv");
  REQUIRE(pdk_matrix_write_csv(m, path.c_str()) == PDK_OK);
  pdk_matrix* back = nullptr;
  REQUIRE(pdk_matrix_read_csv(path.c_str(), 0, &back) == PDK_OK);
  CHECK(std::vector<double>(pdk_matrix_data(back), pdk_matrix_data(back) + 6) ==
        std::vector<double>{1, 2, 3, 4, 5, 6.5});
  pdk_matrix_free(back);
  pdk_matrix_free(m);
  pdk_matrix_free(nullptr);
  CHECK(pdk_matrix_create(1, 1, nullptr, &m) == PDK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("kernel Gram") {
  pdk_kernel* k = nullptr;
  REQUIRE(pdk_kernel_parse("sinc", &k) == PDK_OK);
  CHECK(std::string(pdk_kernel_family(k)) == "sinc");
  pdk_matrix* pts = make(3, 1, {0, 1, 2});
  pdk_matrix* g = nullptr;
  REQUIRE(pdk_kernel_gram(k, pts, &g) == PDK_OK);
  const std::vector<double> gv(pdk_matrix_data(g), pdk_matrix_data(g) + 9);
  CHECK(gv == std::vector<double>{1, 0, 0, 0, 1, 0, 0, 0, 1});
  pdk_matrix_free(g);
  pdk_matrix* bad = make(1, 2, {0, 1});
  CHECK(pdk_kernel_gram(k, bad, &g) == PDK_OK);  // sinc accepts any dimension
  pdk_matrix_free(g);
  pdk_kernel_free(k);
  REQUIRE(pdk_kernel_parse("pw:a=1", &k) == PDK_OK);
  CHECK(pdk_kernel_gram(k, bad, &g) == PDK_ERR_DOMAIN);
  pdk_kernel_free(k);
  pdk_matrix_free(bad);
  pdk_matrix_free(pts);
}

TEST_CASE("Kaczmarz through the C API") {
  pdk_matrix* a = make(3, 2, {1, 0, 0, 1, 1, 1});
  pdk_matrix* b = make(1, 3, {1, 2, 3});
  pdk_kaczmarz_options o;
  pdk_kaczmarz_options_default(&o);
  CHECK(o.tol == 1e-10);
  CHECK(o.max_sweeps == 10000);
  pdk_matrix* x = nullptr;
  char* js = nullptr;
  int conv = 0;
  REQUIRE(pdk_kaczmarz_solve(a, b, &o, &x, &js, &conv) == PDK_OK);
  CHECK(conv == 1);
  CHECK(std::abs(pdk_matrix_data(x)[0] - 1.0) <= 1e-9);
  CHECK(std::abs(pdk_matrix_data(x)[1] - 2.0) <= 1e-9);
  const auto j = take_json(js);
  CHECK(j.size() == 4);
  CHECK(j["converged"] == true);
  CHECK(j["iterations"].get<int>() % 3 == 0);
  CHECK(j["residual_history"].is_array());
  CHECK(j["final_residual"].get<double>() <= 1e-9);
  pdk_matrix_free(x);

  o.mode = PDK_ROWS_RANDOMIZED;
  o.seed = 5;
  REQUIRE(pdk_kaczmarz_solve(a, b, &o, nullptr, nullptr, &conv) == PDK_OK);
  CHECK(conv == 1);

  pdk_matrix* inconsistent = make(2, 1, {0, 1});
  pdk_matrix* col = make(2, 1, {1, 1});
  o.max_sweeps = 20;
  REQUIRE(pdk_kaczmarz_solve(col, inconsistent, &o, nullptr, &js, &conv) == PDK_OK);
  CHECK(conv == 0);
  CHECK(take_json(js)["converged"] == false);

  pdk_matrix* wrong = make(2, 2, {1, 2, 3, 4});
  CHECK(pdk_kaczmarz_solve(a, wrong, &o, nullptr, nullptr, &conv) == PDK_ERR_DOMAIN);
  for (auto* m : {a, b, inconsistent, col, wrong}) pdk_matrix_free(m);
}

TEST_CASE("frame bounds and GP sampling") {
  pdk_matrix* v = make(3, 2, {1, 0, 0, 1, 1, 1});
  char* js = nullptr;
  REQUIRE(pdk_frame_bounds(v, nullptr, &js) == PDK_OK);
  auto j = take_json(js);
  CHECK(j["a"].get<double>() == doctest::Approx(1.0));
  CHECK(j["b"].get<double>() == doctest::Approx(3.0));
  CHECK(j["is_frame"] == true);
  pdk_matrix* w = make(3, 1, {1, 1, 0});
  CHECK(pdk_frame_bounds(v, w, &js) == PDK_ERR_INVALID_ARGUMENT);
  pdk_matrix_free(w);

  pdk_kernel* k = nullptr;
  REQUIRE(pdk_kernel_parse("gaussian:sigma=1", &k) == PDK_OK);
  pdk_matrix* pts = make(2, 1, {0, 0.5});
  pdk_matrix* s1 = nullptr;
  pdk_matrix* s2 = nullptr;
  REQUIRE(pdk_gp_sample(k, pts, 100, 9, &s1) == PDK_OK);
  REQUIRE(pdk_gp_sample(k, pts, 100, 9, &s2) == PDK_OK);
  CHECK(pdk_matrix_rows(s1) == 100);
  CHECK(pdk_matrix_cols(s1) == 2);
  CHECK(std::equal(pdk_matrix_data(s1), pdk_matrix_data(s1) + 200, pdk_matrix_data(s2)));
  pdk_kernel_free(k);

  const auto gram = scratch("indef.csv");
  std::ofstream(gram) << "1,2\n2,1\n";
  REQUIRE(pdk_kernel_parse(("explicit:file=" + gram.string()).c_str(), &k) == PDK_OK);
  pdk_matrix* idx = make(2, 1, {0, 1});
  pdk_matrix* s3 = nullptr;
  CHECK(pdk_gp_sample(k, idx, 10, 1, &s3) == PDK_ERR_NOT_PSD);
  CHECK(s3 == nullptr);
  pdk_kernel_free(k);
  for (auto* m : {v, pts, s1, s2, idx}) pdk_matrix_free(m);
}

TEST_CASE("PCA image compression") {
  const auto in = scratch("in.pgm");
  const auto out = scratch("out.pgm");
  {
    std::ofstream f(in, std::ios::binary);
    f << "P5\n8 6\n255\n";
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 8; ++c) f.put(static_cast<char>((r * 31 + c * c * 3) % 256));
  }
  char* js = nullptr;
  REQUIRE(pdk_pca_compress_pgm(in.c_str(), 6, out.c_str(), &js) == PDK_OK);
  auto j = take_json(js);
  CHECK(j.size() == 4);
  CHECK(j["components"] == 6);
  CHECK(j["mse"].get<double>() <= 1e-8);
  CHECK(j["eigenvalues"].size() == 8);
  CHECK(fs::exists(out));
  CHECK(pdk_pca_compress_pgm(in.c_str(), 9, out.c_str(), &js) == PDK_ERR_INVALID_ARGUMENT);
  CHECK(pdk_pca_compress_pgm(in.c_str(), 0, out.c_str(), &js) == PDK_ERR_INVALID_ARGUMENT);
  {
    std::ofstream f(in, std::ios::binary);
    f << "P5\n8 6\n65535\n";
  }
  CHECK(pdk_pca_compress_pgm(in.c_str(), 2, out.c_str(), &js) == PDK_ERR_FORMAT);
}
