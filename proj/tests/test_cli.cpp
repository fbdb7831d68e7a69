#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gmorph/cli.hpp"
#include "gmorph/formats.hpp"
#include "gmorph/grid.hpp"
#include "gmorph/pnm.hpp"

using namespace gmorph;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gmorph-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(out);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

BinaryImage blob_image(std::int32_t w, std::int32_t h) {
  BinaryImage img(w, h);
  for (std::int32_t r = 2; r < h - 2; ++r) {
    for (std::int32_t c = 2; c < w - 2; ++c) {
      if ((r - h / 2) * (r - h / 2) + (c - w / 2) * (c - w / 2) < (w / 3) * (w / 3)) {
        img.put(r, c, true);
      }
    }
  }
  return img;
}

std::string pbm_bytes(const BinaryImage& img) {
  std::ostringstream out;
  write_pbm(out, img);
  return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("dilate with the single-edge graph reproduces the raster") {
  TempDir tmp;
  const BinaryImage img = blob_image(12, 10);
  spit(tmp.file("in.pbm"), pbm_bytes(img));
  const int rc = cli::run({"dilate", "-i", tmp.file("in.pbm"), "-o", tmp.file("out.pbm"),
                           "--sgraph", "single"});
  CHECK(rc == 0);
  CHECK(slurp(tmp.file("out.pbm")) == pbm_bytes(img));
}

TEST_CASE("exit codes") {
  TempDir tmp;
  SUBCASE("missing input file is an I/O failure") {
    CHECK(cli::run({"dilate", "-i", tmp.file("absent.pbm"), "-o", tmp.file("o.pbm")}) == 2);
  }
  SUBCASE("unknown arguments are rejected") {
    CHECK(cli::run({"dilate", "--nonsense"}) == 1);
    CHECK(cli::run({}) == 1);
    CHECK(cli::run({"frobnicate"}) == 1);
  }
  SUBCASE("malformed input is a parse failure") {
    spit(tmp.file("bad.pbm"), "P1\n2 2\n0 1");
    CHECK(cli::run({"erode", "-i", tmp.file("bad.pbm"), "-o", tmp.file("o.pbm")}) == 2);
  }
  SUBCASE("k out of range is a pipeline error") {
    const BinaryImage img = blob_image(10, 10);
    spit(tmp.file("in.pbm"), pbm_bytes(img));
    REQUIRE(cli::run({"skeletonize", "-i", tmp.file("in.pbm"), "-o", tmp.file("d.gmsk")}) == 0);
    CHECK(cli::run({"reconstruct", "-i", tmp.file("d.gmsk"), "-o", tmp.file("r.pbm"), "--k",
                    "9999"}) == 3);
  }
}

TEST_CASE("skeletonize then reconstruct reproduces the raster") {
  TempDir tmp;
  const BinaryImage img = blob_image(14, 12);  // no isolated pixels by shape
  spit(tmp.file("in.pbm"), pbm_bytes(img));
  for (const std::string sgraph : {"grid3", "square"}) {
    CAPTURE(sgraph);
    REQUIRE(cli::run({"skeletonize", "-i", tmp.file("in.pbm"), "-o", tmp.file("d.gmsk"),
                      "--sgraph", sgraph, "--connectivity", "8"}) == 0);
    REQUIRE(cli::run({"reconstruct", "-i", tmp.file("d.gmsk"), "-o", tmp.file("out.pbm"),
                      "--k", "0"}) == 0);
    CHECK(slurp(tmp.file("out.pbm")) == pbm_bytes(img));
  }
}

TEST_CASE("edge-set output format round trips") {
  TempDir tmp;
  const BinaryImage img = blob_image(10, 9);
  spit(tmp.file("in.pbm"), pbm_bytes(img));
  REQUIRE(cli::run({"erode", "-i", tmp.file("in.pbm"), "-o", tmp.file("out.gme"), "--format",
                    "edges", "--sgraph", "square", "--vacuous", "exclude"}) == 0);
  const EdgeSet es = parse_edgeset(slurp(tmp.file("out.gme")));
  CHECK(es.grid().connectivity() == Connectivity::Eight);
  // Feed the edge file back in.
  REQUIRE(cli::run({"dilate", "-i", tmp.file("out.gme"), "-o", tmp.file("back.gme"), "--format",
                    "edges", "--sgraph", "single"}) == 0);
  CHECK(parse_edgeset(slurp(tmp.file("back.gme"))) == es);
}

TEST_CASE("label-scales rendering and distance map output") {
  TempDir tmp;
  const BinaryImage img = blob_image(12, 12);
  spit(tmp.file("in.pbm"), pbm_bytes(img));
  REQUIRE(cli::run({"skeletonize", "-i", tmp.file("in.pbm"), "-o", tmp.file("d.gmsk"),
                    "--label-scales", tmp.file("labels.pgm")}) == 0);
  std::istringstream labels_in(slurp(tmp.file("labels.pgm")));
  const auto labels = read_pnm(labels_in);
  CHECK(std::holds_alternative<GrayImage>(labels));

  REQUIRE(cli::run({"distmap", "-i", tmp.file("in.pbm"), "-o", tmp.file("dist.pgm"),
                    "--sgraph", "grid3"}) == 0);
  std::istringstream dist_in(slurp(tmp.file("dist.pgm")));
  const auto dist = read_pnm(dist_in);
  REQUIRE(std::holds_alternative<GrayImage>(dist));
  CHECK(std::get<GrayImage>(dist).width == 12);
}

TEST_CASE("distance skeleton and connectivity check") {
  TempDir tmp;
  const BinaryImage img = blob_image(12, 12);
  spit(tmp.file("in.pbm"), pbm_bytes(img));
  REQUIRE(cli::run({"skel-dt", "-i", tmp.file("in.pbm"), "-o", tmp.file("sk.pbm"), "--variant",
                    "odd"}) == 0);
  std::istringstream sk_in(slurp(tmp.file("sk.pbm")));
  CHECK(std::holds_alternative<BinaryImage>(read_pnm(sk_in)));

  REQUIRE(cli::run({"erode", "-i", tmp.file("in.pbm"), "-o", tmp.file("er.pbm"), "--sgraph",
                    "triangle-odd"}) == 0);
  CHECK(cli::run({"check-connected", tmp.file("in.pbm"), tmp.file("er.pbm")}) == 0);
  CHECK(cli::run({"check-connected", tmp.file("in.pbm"), tmp.file("in.pbm")}) == 0);
}

TEST_CASE("classical skeleton pipeline reproduces the raster") {
  TempDir tmp;
  const BinaryImage img = blob_image(16, 13);
  spit(tmp.file("in.pbm"), pbm_bytes(img));
  for (const std::string se : {"box3", "cross3"}) {
    CAPTURE(se);
    REQUIRE(cli::run({"classical-skel", "-i", tmp.file("in.pbm"), "-o", tmp.file("cs.pgm"),
                      "--se", se}) == 0);
    REQUIRE(cli::run({"classical-recon", "-i", tmp.file("cs.pgm"), "-o", tmp.file("cr.pbm"),
                      "--se", se, "--k", "0"}) == 0);
    CHECK(slurp(tmp.file("cr.pbm")) == pbm_bytes(img));
  }
}

TEST_CASE("custom structuring graph file") {
  TempDir tmp;
  spit(tmp.file("s.sg"), "v 0\nv 1\ne 0 1 rb\n");
  const BinaryImage img = blob_image(10, 10);
  spit(tmp.file("in.pbm"), pbm_bytes(img));
  REQUIRE(cli::run({"erode", "-i", tmp.file("in.pbm"), "-o", tmp.file("out.pbm"), "--sgraph",
                    tmp.file("s.sg")}) == 0);
  CHECK(slurp(tmp.file("out.pbm")) == pbm_bytes(img));

  spit(tmp.file("bad.sg"), "v 0\ne 0 5 r\n");
  CHECK(cli::run({"erode", "-i", tmp.file("in.pbm"), "-o", tmp.file("out.pbm"), "--sgraph",
                  tmp.file("bad.sg")}) == 2);
}

TEST_SUITE_END();
