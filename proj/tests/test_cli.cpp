// Runs the pdk executable on small fixtures and checks exit codes and outputs.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

#include "pdk/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "pdk_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(PDK_CLI_PATH) + " " + args + " >" + (kDir / "stdout.txt").string() +
                          " 2>" + (kDir / "stderr.txt").string();
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string path(const std::string& name) { return (kDir / name).string(); }

void write(const std::string& name, const std::string& text) {
  std::ofstream(kDir / name, std::ios::binary) << text;
}

std::string slurp(const std::string& name) {
  std::ifstream in(kDir / name, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json json_of(const std::string& name) { return nlohmann::json::parse(slurp(name)); }

struct Setup {
  Setup() { fs::create_directories(kDir); }
} setup;

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("kernel gram --kernel sinc --points x.csv --out y.csv --bogus") == 2);
  CHECK(run("kernel gram --kernel sinc") == 2);
  CHECK(slurp("stderr.txt").find("Usage") != std::string::npos);
  CHECK(run("--help") == 0);
}

TEST_CASE("kernel gram") {
  write("ints.csv", "-2\n-1\n0\n1\n2\n");
  CHECK(run("kernel gram --kernel sinc --points " + path("ints.csv") + " --out " + path("gram.csv")) == 0);
  const auto g = pdk::read_csv(path("gram.csv"));
  CHECK(g == pdk::Matrix::identity(5));
  write("hdr.csv", "x\n0\n1\n");
  CHECK(run("--header kernel gram --kernel gaussian:sigma=1 --points " + path("hdr.csv") + " --out " + path("g2.csv")) == 0);
  CHECK(pdk::read_csv(path("g2.csv")).rows() == 2);
  CHECK(run("kernel gram --kernel nope --points " + path("ints.csv") + " --out " + path("g.csv")) == 2);
  CHECK(run("kernel gram --kernel sinc --points " + path("missing.csv") + " --out " + path("g.csv")) == 2);
  write("ragged.csv", "1,2\n3\n");
  CHECK(run("kernel gram --kernel sinc --points " + path("ragged.csv") + " --out " + path("g.csv")) == 2);
}

TEST_CASE("kaczmarz solve") {
  write("eye.csv", "1,0,0\n0,1,0\n0,0,1\n");
  write("rhs.csv", "1\n2\n3\n");
  CHECK(run("kaczmarz solve --matrix " + path("eye.csv") + " --rhs " + path("rhs.csv") + " --report " +
            path("k.json") + " --solution " + path("x.csv")) == 0);
  auto j = json_of("k.json");
  CHECK(j["converged"] == true);
  CHECK(j["iterations"].get<int>() <= 3);
  CHECK(j.size() == 4);
  CHECK(pdk::read_csv(path("x.csv")) == pdk::Matrix{{1}, {2}, {3}});

  CHECK(run("kaczmarz solve --matrix " + path("eye.csv") + " --rhs " + path("rhs.csv") + " --report " +
            path("k.json") + " --mode randomized") == 2);
  CHECK(run("kaczmarz solve --matrix " + path("eye.csv") + " --rhs " + path("rhs.csv") + " --report " +
            path("k.json") + " --mode randomized --seed 3") == 0);
  CHECK(run("kaczmarz solve --matrix " + path("eye.csv") + " --rhs " + path("rhs.csv") + " --report " +
            path("k.json") + " --mode sideways") == 2);

  write("a1.csv", "1\n1\n");
  write("b1.csv", "0\n1\n");
  fs::remove(kDir / "k2.json");
  CHECK(run("kaczmarz solve --matrix " + path("a1.csv") + " --rhs " + path("b1.csv") + " --report " +
            path("k2.json") + " --max-sweeps 30") == 1);
  auto j2 = json_of("k2.json");
  CHECK(j2["converged"] == false);
  CHECK(j2["residual_history"].size() == 30);

  write("zero.csv", "0,0\n1,0\n");
  write("b2.csv", "1\n1\n");
  CHECK(run("kaczmarz solve --matrix " + path("zero.csv") + " --rhs " + path("b2.csv") + " --report " +
            path("k3.json")) == 2);
}

TEST_CASE("pca compress") {
  pdk::PgmImage img{16, 12, 255, {}};
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 16; ++c) img.pixels.push_back(static_cast<std::uint8_t>((r * 7 + c * 13 + r * c) % 256));
  {
    std::ofstream f(kDir / "img.pgm", std::ios::binary);
    pdk::write_pgm_ascii(img, f);
  }
  CHECK(run("pca compress --input " + path("img.pgm") + " --components 12 --out " + path("out.pgm") +
            " --report " + path("p.json")) == 0);
  auto j = json_of("p.json");
  CHECK(j["mse"].get<double>() <= 1e-8);
  CHECK(j["components"] == 12);
  CHECK(j.contains("compression_ratio"));
  CHECK(j["eigenvalues"].size() == 16);
  CHECK(pdk::read_pgm(path("out.pgm")) == img);
  CHECK(slurp("out.pgm").rfind("P5", 0) == 0);

  CHECK(run("pca compress --input " + path("img.pgm") + " --components 2 --out " + path("out2.pgm") +
            " --report " + path("p2.json")) == 0);
  CHECK(json_of("p2.json")["mse"].get<double>() > 0.0);
  CHECK(run("pca compress --input " + path("img.pgm") + " --components 99 --out " + path("o.pgm") +
            " --report " + path("p3.json")) == 2);
  write("deep.pgm", "P2 2 2 65535\n0 0 0 0\n");
  CHECK(run("pca compress --input " + path("deep.pgm") + " --components 1 --out " + path("o.pgm") +
            " --report " + path("p3.json")) == 2);
  CHECK(slurp("stderr.txt").find("unsupported") != std::string::npos);
}

TEST_CASE("frame bounds") {
  write("mb.csv", "0,1\n-0.8660254037844386,-0.5\n0.8660254037844386,-0.5\n");
  CHECK(run("frame bounds --vectors " + path("mb.csv") + " --report " + path("f.json")) == 0);
  auto j = json_of("f.json");
  CHECK(j["a"].get<double>() == doctest::Approx(1.5));
  CHECK(j["b"].get<double>() == doctest::Approx(1.5));
  write("w.csv", "1\n2\n3\n");
  CHECK(run("frame bounds --vectors " + path("mb.csv") + " --weights " + path("w.csv") + " --report " +
            path("f2.json")) == 0);
  CHECK(json_of("f2.json")["b"].get<double>() > 1.5);
}

TEST_CASE("gp sample") {
  write("pts.csv", "0\n0.5\n1\n");
  CHECK(run("gp sample --kernel gaussian:sigma=1 --points " + path("pts.csv") + " --n 500 --seed 4 --out " +
            path("s1.csv")) == 0);
  CHECK(run("gp sample --kernel gaussian:sigma=1 --points " + path("pts.csv") + " --n 500 --seed 4 --out " +
            path("s2.csv")) == 0);
  CHECK(slurp("s1.csv") == slurp("s2.csv"));
  CHECK(pdk::read_csv(path("s1.csv")).rows() == 500);
  CHECK(run("gp sample --kernel gaussian:sigma=1 --points " + path("pts.csv") + " --n 500 --out " +
            path("s3.csv")) == 2);
  write("bad.csv", "1,2\n2,1\n");
  write("idx.csv", "0\n1\n");
  CHECK(run("gp sample --kernel explicit:file=" + path("bad.csv") + " --points " + path("idx.csv") +
            " --n 10 --seed 1 --out " + path("s4.csv")) == 1);
}
