#include "gmorph/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "gmorph/classical.hpp"
#include "gmorph/errors.hpp"
#include "gmorph/formats.hpp"
#include "gmorph/grid.hpp"
#include "gmorph/morph.hpp"
#include "gmorph/pnm.hpp"
#include "gmorph/skeleton.hpp"

namespace gmorph::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading '" + path + "'");
  return buf.str();
}

/// Temp-then-rename so readers never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed while writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move temporary file onto '" + path + "'");
  }
}

struct CommonOptions {
  std::string input;
  std::string output;
  int connectivity = 8;
  std::string sgraph = "grid3";
  std::string vacuous = "include";
  int threshold = 128;
  std::string format = "pbm";
  std::int32_t max_iter = 0;  // 0 = default budget
};

Connectivity to_connectivity(int c) {
  return c == 4 ? Connectivity::Four : Connectivity::Eight;
}

VacuousPolicy to_policy(const std::string& v) {
  return v == "exclude" ? VacuousPolicy::Exclude : VacuousPolicy::Include;
}

StructuringGraph load_sgraph(const std::string& spec) {
  if (const auto builtin = builtin_sgraph_by_name(spec)) return builtin_sgraph(*builtin);
  return parse_sgraph(read_file(spec));
}

BinaryImage to_binary(const std::variant<BinaryImage, GrayImage>& img, int threshold) {
  if (std::holds_alternative<BinaryImage>(img)) return std::get<BinaryImage>(img);
  return binarize(std::get<GrayImage>(img), threshold);
}

/// Reads a raster (PBM/PGM) or edge-set (GME1) input into an edge set.
EdgeSet load_edgeset(const CommonOptions& opt) {
  const std::string bytes = read_file(opt.input);
  if (bytes.rfind("GME1", 0) == 0) return parse_edgeset(bytes);
  std::istringstream in(bytes);
  const BinaryImage img = to_binary(read_pnm(in), opt.threshold);
  const GridGraph grid(img.width, img.height, to_connectivity(opt.connectivity));
  return image_to_edgeset(img, grid);
}

BinaryImage load_raster(const CommonOptions& opt) {
  const std::string bytes = read_file(opt.input);
  if (bytes.rfind("GME1", 0) == 0) return edgeset_to_image(parse_edgeset(bytes));
  std::istringstream in(bytes);
  return to_binary(read_pnm(in), opt.threshold);
}

void store_edgeset(const EdgeSet& es, const CommonOptions& opt) {
  if (opt.format == "edges") {
    write_file_atomic(opt.output, serialize_edgeset(es));
    return;
  }
  const BinaryImage img = edgeset_to_image(es);
  std::ostringstream out;
  if (opt.format == "pgm") {
    GrayImage gray{img.width, img.height, 255, {}};
    gray.pixels.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) gray.pixels[i] = img.pixels[i] ? 255 : 0;
    write_pgm(out, gray);
  } else {
    write_pbm(out, img);
  }
  write_file_atomic(opt.output, out.str());
}

void store_raster(const BinaryImage& img, const CommonOptions& opt) {
  std::ostringstream out;
  if (opt.format == "pgm") {
    GrayImage gray{img.width, img.height, 255, {}};
    gray.pixels.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) gray.pixels[i] = img.pixels[i] ? 255 : 0;
    write_pgm(out, gray);
  } else {
    write_pbm(out, img);
  }
  write_file_atomic(opt.output, out.str());
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_output = true) {
  cmd->add_option("-i,--input", opt.input, "input file (PBM/PGM raster or GME1 edge set)")
      ->required();
  if (needs_output) {
    cmd->add_option("-o,--output", opt.output, "output file")->required();
  }
  cmd->add_option("--connectivity", opt.connectivity, "grid connectivity for raster inputs")
      ->check(CLI::IsMember({4, 8}));
  cmd->add_option("--threshold", opt.threshold, "binarization threshold for PGM inputs")
      ->check(CLI::Range(0, 255));
}

void add_sgraph_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--sgraph", opt.sgraph,
                  "structuring graph: single|triangle-odd|triangle-even|square|grid3 or a file");
  cmd->add_option("--vacuous", opt.vacuous, "empty-neighborhood policy for erosion")
      ->check(CLI::IsMember({"include", "exclude"}));
}

void add_format_option(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--format", opt.format, "output encoding")
      ->check(CLI::IsMember({"pbm", "pgm", "edges"}));
}

std::int32_t effective_max_iter(const CommonOptions& opt, const GridGraph& g) {
  return opt.max_iter > 0 ? opt.max_iter : default_max_iterations(g);
}

GrayImage label_layers(const SkeletonDecomposition& d) {
  const GridGraph& g = d.grid();
  GrayImage out{g.width(), g.height(), 255, {}};
  out.pixels.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t n = d.layers.size(); n-- > 0;) {
    const BinaryImage img = edgeset_to_image(d.layers[n]);
    const std::uint32_t label = std::min<std::uint32_t>(static_cast<std::uint32_t>(n) + 1, 255);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      if (img.pixels[i]) out.pixels[i] = static_cast<std::uint8_t>(label);
    }
  }
  return out;
}

FlatSE to_flat_se(const std::string& name) {
  return name == "cross3" ? FlatSE::Cross3 : FlatSE::Box3;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"edge-based graph morphology on pixel-adjacency graphs"};
  app.require_subcommand(1);

  CommonOptions opt;
  bool structural = false;
  std::int32_t k = 0;
  std::string variant = "odd";
  std::string se_name = "box3";
  std::string second_input;
  std::string label_scales_path;

  CLI::App* dilate_cmd = app.add_subcommand("dilate", "edge-based dilation");
  CLI::App* erode_cmd = app.add_subcommand("erode", "edge-based erosion");
  CLI::App* open_cmd = app.add_subcommand("open", "opening (erode then dilate)");
  CLI::App* close_cmd = app.add_subcommand("close", "closing (dilate then erode)");
  for (CLI::App* cmd : {dilate_cmd, erode_cmd, open_cmd, close_cmd}) {
    add_common(cmd, opt);
    add_sgraph_options(cmd, opt);
    add_format_option(cmd, opt);
  }
  open_cmd->add_flag("--structural", structural, "use the structural opening (bud containment)");

  CLI::App* skel_cmd = app.add_subcommand("skeletonize", "multiscale skeleton decomposition");
  add_common(skel_cmd, opt);
  add_sgraph_options(skel_cmd, opt);
  skel_cmd->add_option("--max-iter", opt.max_iter, "iteration budget (default 4*(w+h))");
  skel_cmd->add_option("--label-scales", label_scales_path,
                       "also write a PGM whose pixel value encodes min layer index + 1");

  CLI::App* recon_cmd = app.add_subcommand("reconstruct", "rebuild an image from a decomposition");
  add_common(recon_cmd, opt);
  add_format_option(recon_cmd, opt);
  recon_cmd->add_option("--k", k, "start scale (0 = exact reconstruction)");

  CLI::App* dist_cmd = app.add_subcommand("distmap", "erosion-depth distance map (PGM output)");
  add_common(dist_cmd, opt);
  add_sgraph_options(dist_cmd, opt);
  dist_cmd->add_option("--max-iter", opt.max_iter, "iteration budget (default 4*(w+h))");

  CLI::App* skdt_cmd = app.add_subcommand("skel-dt", "distance-map skeleton (local maxima)");
  add_common(skdt_cmd, opt);
  skdt_cmd->add_option("--variant", variant, "distance neighborhood")
      ->check(CLI::IsMember({"odd", "even"}));

  CLI::App* check_cmd =
      app.add_subcommand("check-connected", "flat-zone coarsening check of an input/output pair");
  check_cmd->add_option("input", opt.input, "image before the operation")->required();
  check_cmd->add_option("transformed", second_input, "image after the operation")->required();
  check_cmd->add_option("--connectivity", opt.connectivity, "component connectivity")
      ->check(CLI::IsMember({4, 8}));
  check_cmd->add_option("--threshold", opt.threshold, "binarization threshold for PGM inputs")
      ->check(CLI::Range(0, 255));

  CLI::App* cskel_cmd =
      app.add_subcommand("classical-skel", "pixel-based skeleton (PGM scale labels)");
  add_common(cskel_cmd, opt);
  cskel_cmd->add_option("--se", se_name, "flat structuring element")
      ->check(CLI::IsMember({"cross3", "box3"}));

  CLI::App* crecon_cmd =
      app.add_subcommand("classical-recon", "rebuild an image from pixel-based scale labels");
  add_common(crecon_cmd, opt);
  add_format_option(crecon_cmd, opt);
  crecon_cmd->add_option("--se", se_name, "flat structuring element used by classical-skel")
      ->check(CLI::IsMember({"cross3", "box3"}));
  crecon_cmd->add_option("--k", k, "start scale (0 = exact reconstruction)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gmorph");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (dilate_cmd->parsed() || erode_cmd->parsed() || open_cmd->parsed() || close_cmd->parsed()) {
    const EdgeSet input = load_edgeset(opt);
    const StructuringGraph s = load_sgraph(opt.sgraph);
    const VacuousPolicy policy = to_policy(opt.vacuous);
    EdgeSet result(input.grid());
    if (dilate_cmd->parsed()) {
      result = dilate(input, s, input.grid());
    } else if (erode_cmd->parsed()) {
      result = erode(input, s, input.grid(), policy);
    } else if (open_cmd->parsed()) {
      result = structural ? open_structural(input, s, input.grid())
                          : open_adjoint(input, s, input.grid(), policy);
    } else {
      result = close_adjoint(input, s, input.grid(), policy);
    }
    store_edgeset(result, opt);
    return 0;
  }

  if (skel_cmd->parsed()) {
    const EdgeSet input = load_edgeset(opt);
    const StructuringGraph s = load_sgraph(opt.sgraph);
    const SkeletonDecomposition d =
        skeletonize(input, s, input.grid(), to_policy(opt.vacuous),
                    effective_max_iter(opt, input.grid()));
    write_file_atomic(opt.output, serialize_decomposition(d));
    if (!label_scales_path.empty()) {
      std::ostringstream out;
      write_pgm(out, label_layers(d));
      write_file_atomic(label_scales_path, out.str());
    }
    return 0;
  }

  if (recon_cmd->parsed()) {
    const SkeletonDecomposition d = parse_decomposition(read_file(opt.input));
    store_edgeset(reconstruct(d, d.grid(), k), opt);
    return 0;
  }

  if (dist_cmd->parsed()) {
    const EdgeSet input = load_edgeset(opt);
    const StructuringGraph s = load_sgraph(opt.sgraph);
    const DistanceMap dm = distance_map(input, s, input.grid(), to_policy(opt.vacuous),
                                        effective_max_iter(opt, input.grid()));
    GrayImage gray{dm.grid.width(), dm.grid.height(), 255, {}};
    gray.pixels.resize(dm.values.size());
    for (std::size_t i = 0; i < dm.values.size(); ++i) {
      // Unbounded pixels and depths past 255 both clamp to white.
      gray.pixels[i] = static_cast<std::uint8_t>(std::min<std::uint32_t>(dm.values[i], 255));
    }
    std::ostringstream out;
    write_pgm(out, gray);
    write_file_atomic(opt.output, out.str());
    return 0;
  }

  if (skdt_cmd->parsed()) {
    const BinaryImage img = load_raster(opt);
    const BinaryImage sk = skeleton_by_distance(
        img, variant == "odd" ? DistanceVariant::Odd : DistanceVariant::Even);
    store_raster(sk, opt);
    return 0;
  }

  if (check_cmd->parsed()) {
    CommonOptions first = opt;
    const BinaryImage before = load_raster(first);
    CommonOptions second = opt;
    second.input = second_input;
    const BinaryImage after = load_raster(second);
    const ConnectednessCheck res =
        check_connected_instance(before, after, to_connectivity(opt.connectivity));
    if (res.connected) {
      std::cout << "connected: yes\n";
    } else {
      std::cout << "connected: no\n";
      if (res.witness) {
        std::cout << "witness: input " << (res.witness->input_foreground ? "foreground" : "background")
                  << " component containing (" << res.witness->first.row << ","
                  << res.witness->first.col << ") is split; output differs at ("
                  << res.witness->second.row << "," << res.witness->second.col << ")\n";
      }
    }
    return 0;
  }

  if (cskel_cmd->parsed()) {
    const BinaryImage img = load_raster(opt);
    const ClassicalSkeleton sk = skel_px(PixelSet::from_image(img), to_flat_se(se_name));
    GrayImage gray{sk.width, sk.height, 255, {}};
    gray.pixels.assign(static_cast<std::size_t>(sk.width) * static_cast<std::size_t>(sk.height), 0);
    for (std::size_t n = 0; n < sk.layers.size(); ++n) {
      const std::uint8_t label = static_cast<std::uint8_t>(std::min<std::size_t>(n + 1, 255));
      for (std::int32_t r = 0; r < sk.height; ++r) {
        for (std::int32_t c = 0; c < sk.width; ++c) {
          if (sk.layers[n].contains(r, c)) {
            gray.pixels[static_cast<std::size_t>(r) * static_cast<std::size_t>(sk.width) +
                        static_cast<std::size_t>(c)] = label;
          }
        }
      }
    }
    std::ostringstream out;
    write_pgm(out, gray);
    write_file_atomic(opt.output, out.str());
    return 0;
  }

  if (crecon_cmd->parsed()) {
    const std::string bytes = read_file(opt.input);
    std::istringstream in(bytes);
    const auto img = read_pnm(in);
    if (!std::holds_alternative<GrayImage>(img)) {
      throw ParseError("classical-recon expects the PGM written by classical-skel");
    }
    const GrayImage& labels = std::get<GrayImage>(img);
    ClassicalSkeleton sk{to_flat_se(se_name), labels.width, labels.height, {}};
    std::uint8_t top = 0;
    for (std::uint8_t v : labels.pixels) top = std::max(top, v);
    for (std::uint8_t n = 0; n < top; ++n) sk.layers.emplace_back(labels.width, labels.height);
    for (std::int32_t r = 0; r < labels.height; ++r) {
      for (std::int32_t c = 0; c < labels.width; ++c) {
        const std::uint8_t v = labels.at(r, c);
        if (v > 0) sk.layers[static_cast<std::size_t>(v - 1)].add(r, c);
      }
    }
    store_raster(recon_px(sk, k).to_image(), opt);
    return 0;
  }

  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gmorph::cli
