// pctopo command line. Links only the C interface.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 verification failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pctopo/pctopo.h"

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kVerifyFailed = 3;

std::string fmt(double v) {
  if (v == HUGE_VAL) return "inf";
  if (v == -HUGE_VAL) return "-inf";
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct DataError {
  int code;
};

void check(pct_status s, const std::string& what) {
  if (s == PCT_OK) return;
  std::cerr << "error: " << what << ": " << pct_status_string(s);
  const char* msg = pct_last_error();
  if (msg && *msg) std::cerr << ": " << msg;
  std::cerr << '\n';
  throw DataError{s == PCT_INVALID_ARGUMENT ? kUsage : kData};
}

template <typename T, void (*Destroy)(T*)>
struct Owned {
  T* p = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { Destroy(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Cloud = Owned<pct_cloud, pct_cloud_destroy>;
using GridH = Owned<pct_grid, pct_grid_destroy>;
using Diagram = Owned<pct_diagram, pct_diagram_destroy>;
using MatchingH = Owned<pct_matching, pct_matching_destroy>;
using Suite = Owned<pct_suite, pct_suite_destroy>;

struct Io {
  std::string in;
  std::string out;
  bool header = false;
};

void add_io(CLI::App* cmd, Io& io) {
  cmd->add_option("--data_in", io.in, "input CSV")->required();
  cmd->add_option("--data_out", io.out, "output CSV")->required();
  cmd->add_flag("--header", io.header, "skip one header line of the input");
}

void read_cloud(const Io& io, Cloud& c) {
  check(pct_cloud_read_csv(io.in.c_str(), io.header ? 1 : 0, c.out()), "reading " + io.in);
}

void write_cloud(const std::string& path, const Cloud& c) {
  check(pct_cloud_write_csv(c.get(), path.c_str()), "writing " + path);
  std::cout << pct_cloud_size(c.get()) << " points written to " << path << '\n';
}

void write_grid(const std::string& path, const GridH& g) {
  check(pct_grid_write_csv(g.get(), path.c_str()), "writing " + path);
  std::cout << pct_grid_size(g.get()) << " cells written to " << path << '\n';
}

// Grid input: the file header if any, else --grid_interval / --grid_origin.
struct GridInput {
  double step = 0.0;
  bool have_step = false;
  std::vector<double> origin;
};

void read_grid(const std::string& path, const GridInput& gi, GridH& g) {
  check(pct_grid_read_csv(path.c_str(), gi.have_step ? 1 : 0, gi.step, gi.origin.empty() ? nullptr : gi.origin.data(),
                          gi.origin.size(), 0, g.out()),
        "reading " + path);
  if (gi.have_step && pct_grid_step(g.get()) != gi.step) {
    std::cerr << "error: " << path << " was written with grid interval " << fmt(pct_grid_step(g.get()))
              << ", not " << fmt(gi.step) << '\n';
    throw DataError{kData};
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Point-cloud transforms, degree-0 persistence and stability checks"};
  app.require_subcommand(1);

  Io bs_io;
  double radius = 0.0;
  int max_dim = 2;
  auto* bs = app.add_subcommand("barycentric_subdivision", "append Rips edge midpoints and triangle centroids");
  bs->add_option("--radius", radius, "Rips radius")->required()->check(CLI::NonNegativeNumber);
  bs->add_option("--max_dim", max_dim, "1 (edges) or 2 (edges and triangles)")->check(CLI::IsMember({1, 2}));
  add_io(bs, bs_io);

  Io sp_io;
  double min_dist = 0.0;
  auto* sp = app.add_subcommand("sparsification", "greedy landmarks farther than min_dist apart");
  sp->add_option("--min_dist", min_dist, "minimum distance")->required()->check(CLI::NonNegativeNumber);
  add_io(sp, sp_io);

  Io gr_io;
  double gr_step = 0.0;
  std::vector<double> gr_origin;
  auto* gr = app.add_subcommand("gridification", "floor points onto a lattice");
  gr->add_option("--grid_interval", gr_step, "lattice step")->required();
  gr->add_option("--grid_origin", gr_origin, "lattice origin, comma separated")->delimiter(',');
  add_io(gr, gr_io);

  Io co_io;
  GridInput co_grid;
  std::int64_t buffer = 1;
  auto* co = app.add_subcommand("complement", "lattice cells of the grown bounding box not in the grid");
  co->add_option("--grid_interval", co_grid.step, "lattice step (checked against the file header)");
  co->add_option("--grid_origin", co_grid.origin, "lattice origin for header-less files")->delimiter(',');
  co->add_option("--buffer", buffer, "cells added around the bounding box")->check(CLI::NonNegativeNumber);
  add_io(co, co_io);

  Io th_io;
  GridInput th_grid;
  auto* th = app.add_subcommand("thickening", "half-lattice cells within sup-distance mu/2 of the grid");
  th->add_option("--grid_interval", th_grid.step, "lattice step (checked against the file header)");
  th->add_option("--grid_origin", th_grid.origin, "lattice origin for header-less files")->delimiter(',');
  add_io(th, th_io);

  std::string ph_in, ph_out;
  bool ph_header = false, as_grid = false;
  GridInput ph_grid;
  auto* ph = app.add_subcommand("ph0", "degree-0 persistence diagram");
  ph->add_option("--data_in", ph_in, "input CSV")->required();
  ph->add_option("--diagram_out", ph_out, "output diagram CSV")->required();
  ph->add_flag("--header", ph_header, "skip one header line of the input");
  ph->add_flag("--as_grid", as_grid, "read the input as a grid file");
  ph->add_option("--grid_interval", ph_grid.step, "lattice step for --as_grid");
  ph->add_option("--grid_origin", ph_grid.origin, "lattice origin for --as_grid")->delimiter(',');

  std::string bn_a, bn_b, bn_metric = "chebyshev";
  bool bn_witness = false;
  auto* bn = app.add_subcommand("bottleneck", "bottleneck distance between two diagram files");
  bn->add_option("--a", bn_a, "first diagram CSV")->required();
  bn->add_option("--b", bn_b, "second diagram CSV")->required();
  bn->add_option("--metric", bn_metric, "chebyshev or euclidean")->check(CLI::IsMember({"chebyshev", "euclidean"}));
  bn->add_flag("--witness", bn_witness, "print an optimal matching");

  std::string vf_theorem, vf_csv;
  std::size_t vf_seeds = 100;
  std::uint64_t vf_first = 1;
  bool vf_quiet = false;
  auto* vf = app.add_subcommand("verify", "seeded theorem suite");
  vf->add_option("--theorem", vf_theorem, "bary, sparse, grid or duality")
      ->required()
      ->check(CLI::IsMember({"bary", "sparse", "grid", "duality"}));
  vf->add_option("--seeds", vf_seeds, "number of seeds")->check(CLI::PositiveNumber);
  vf->add_option("--first_seed", vf_first, "first seed");
  vf->add_option("--csv", vf_csv, "also write the cases as CSV");
  vf->add_flag("--quiet", vf_quiet, "summary line only");

  std::uint64_t gen_seed = 1;
  std::size_t gen_n = 1489;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "seeded synthetic planar sample");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--n", gen_n, "number of points")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  co_grid.have_step = co->count("--grid_interval") > 0;
  th_grid.have_step = th->count("--grid_interval") > 0;
  ph_grid.have_step = ph->count("--grid_interval") > 0;

  try {
    if (*bs) {
      Cloud in, out;
      read_cloud(bs_io, in);
      check(pct_barycentric_subdivision(in.get(), radius, max_dim, out.out()), "barycentric_subdivision");
      write_cloud(bs_io.out, out);
    } else if (*sp) {
      Cloud in, out;
      read_cloud(sp_io, in);
      check(pct_sparsification(in.get(), min_dist, out.out()), "sparsification");
      write_cloud(sp_io.out, out);
    } else if (*gr) {
      Cloud in;
      GridH out;
      read_cloud(gr_io, in);
      if (!gr_origin.empty() && gr_origin.size() != pct_cloud_dim(in.get())) {
        std::cerr << "error: --grid_origin has " << gr_origin.size() << " coordinates, data has "
                  << pct_cloud_dim(in.get()) << '\n';
        return kUsage;
      }
      check(pct_gridification(in.get(), gr_step, gr_origin.empty() ? nullptr : gr_origin.data(), out.out()),
            "gridification");
      write_grid(gr_io.out, out);
    } else if (*co) {
      GridH in, out;
      read_grid(co_io.in, co_grid, in);
      check(pct_complement(in.get(), buffer, out.out()), "complement");
      write_grid(co_io.out, out);
    } else if (*th) {
      GridH in, out;
      read_grid(th_io.in, th_grid, in);
      check(pct_thickening(in.get(), out.out()), "thickening");
      write_grid(th_io.out, out);
    } else if (*ph) {
      Diagram d;
      if (as_grid) {
        GridH g;
        read_grid(ph_in, ph_grid, g);
        check(pct_ph0_grid(g.get(), d.out()), "ph0");
      } else {
        Cloud c;
        check(pct_cloud_read_csv(ph_in.c_str(), ph_header ? 1 : 0, c.out()), "reading " + ph_in);
        check(pct_ph0_vr(c.get(), d.out()), "ph0");
      }
      check(pct_diagram_write_csv(d.get(), ph_out.c_str()), "writing " + ph_out);
      std::cout << pct_diagram_size(d.get()) << " intervals written to " << ph_out << '\n';
    } else if (*bn) {
      Diagram a, b;
      pct_metric metric = PCT_CHEBYSHEV;
      check(pct_parse_metric(bn_metric.c_str(), &metric), "--metric");
      check(pct_diagram_read_csv(bn_a.c_str(), a.out()), "reading " + bn_a);
      check(pct_diagram_read_csv(bn_b.c_str(), b.out()), "reading " + bn_b);
      double value = 0.0;
      MatchingH m;
      check(pct_bottleneck(a.get(), b.get(), metric, &value, bn_witness ? m.out() : nullptr), "bottleneck");
      std::cout << fmt(value) << '\n';
      if (bn_witness) {
        for (std::size_t i = 0; i < pct_matching_pair_count(m.get()); ++i) {
          std::size_t x = 0, y = 0;
          pct_matching_pair(m.get(), i, &x, &y);
          std::cout << "pair " << x << ' ' << y << '\n';
        }
        for (int side = 0; side < 2; ++side) {
          for (std::size_t i = 0; i < pct_matching_diagonal_count(m.get(), side); ++i) {
            std::size_t x = 0;
            pct_matching_diagonal(m.get(), side, i, &x);
            std::cout << "diagonal " << (side == 0 ? 'a' : 'b') << ' ' << x << '\n';
          }
        }
      }
    } else if (*vf) {
      pct_theorem t = PCT_BARY;
      check(pct_parse_theorem(vf_theorem.c_str(), &t), "--theorem");
      Suite s;
      check(pct_run_suite(t, vf_seeds, vf_first, s.out()), "verify");
      std::size_t passed = 0, total = pct_suite_size(s.get());
      std::size_t seeds_failed = 0;
      std::uint64_t last_failed_seed = 0;
      bool any_failed = false;
      for (std::size_t i = 0; i < total; ++i) {
        pct_suite_case c;
        pct_suite_get(s.get(), i, &c);
        if (c.pass) {
          ++passed;
        } else if (!any_failed || c.seed != last_failed_seed) {
          ++seeds_failed;
          any_failed = true;
          last_failed_seed = c.seed;
        }
        if (!vf_quiet || !c.pass) {
          std::cout << vf_theorem << " seed=" << c.seed << " n=" << c.n << " N=" << c.dim
                    << (t == PCT_DUALITY ? " buffer=" : " parameter=") << fmt(c.parameter)
                    << (t == PCT_DUALITY ? " euler=" : " bound=") << fmt(c.bound)
                    << (t == PCT_DUALITY ? " duality=" : " value=") << fmt(c.value) << (c.pass ? " PASS" : " FAIL")
                    << '\n';
        }
      }
      if (!vf_csv.empty()) check(pct_suite_write_csv(s.get(), vf_csv.c_str()), "writing " + vf_csv);
      std::cout << vf_theorem << ": " << (vf_seeds - seeds_failed) << '/' << vf_seeds << " seeds pass (" << passed
                << '/' << total << " cases)\n";
      return passed == total ? 0 : kVerifyFailed;
    } else if (*gen) {
      Cloud c;
      check(pct_generate_synthetic(gen_seed, gen_n, c.out()), "generate");
      write_cloud(gen_out, c);
    }
  } catch (const DataError& e) {
    return e.code;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Invoked through a link named after a subcommand, e.g. ./sparsification.
  std::string self = argc > 0 ? argv[0] : "";
  const std::size_t slash = self.find_last_of('/');
  if (slash != std::string::npos) self = self.substr(slash + 1);
  static const char* const kCommands[] = {"barycentric_subdivision", "sparsification", "gridification", "complement",
                                          "thickening", "ph0", "bottleneck", "verify", "generate"};
  for (const char* name : kCommands) {
    if (self == name) {
      std::vector<char*> args;
      args.push_back(argv[0]);
      args.push_back(const_cast<char*>(name));
      for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
      return run(static_cast<int>(args.size()), args.data());
    }
  }
  return run(argc, argv);
}
