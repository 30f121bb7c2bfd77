#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "conestream/barcode.hpp"
#include "conestream/channel.hpp"
#include "conestream/coning.hpp"
#include "conestream/diagnostics.hpp"
#include "conestream/errors.hpp"
#include "conestream/generators.hpp"
#include "conestream/streaming_reduction.hpp"
#include "conestream/tower_stream.hpp"
#include "conestream/verify.hpp"

namespace cs = conestream;

namespace {

constexpr int kValidationFailure = 1;
constexpr int kInputFailure = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validation failure reported by a subcommand (mismatch, bound violation).
struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Input {
 public:
  explicit Input(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw IoError("cannot open " + path + " for reading");
  }
  std::istream& get() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open " + path + " for writing");
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }
  void close() {
    get().flush();
    if (!get()) throw IoError("write to " + (file_ ? path_ : std::string("stdout")) + " failed");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

struct ReduceArgs {
  std::string mode = "immediate";
  std::size_t chunk_size = 200000;
  bool assert_bounds = false;
  std::optional<std::uint64_t> omega;
  std::string stats_in;
};

void add_reduce_flags(CLI::App* cmd, ReduceArgs& r) {
  cmd->add_option("--mode", r.mode, "immediate or chunked")->check(CLI::IsMember({"immediate", "chunked"}));
  cmd->add_option("--chunk-size", r.chunk_size, "events per chunk")->check(CLI::PositiveNumber);
  cmd->add_flag("--assert-bounds", r.assert_bounds, "check the 2ω column / 4ω row bounds");
  cmd->add_option("--omega", r.omega, "tower width for --assert-bounds");
  cmd->add_option("--stats-in", r.stats_in, "stats sidecar supplying omega");
}

std::optional<std::uint64_t> omega_from_sidecar(const std::string& path) {
  Input in(path);
  std::string line;
  while (std::getline(in.get(), line)) {
    if (line.rfind("omega=", 0) == 0) return std::stoull(line.substr(6));
  }
  throw IoError(path + " has no omega entry");
}

cs::ReducerOptions reducer_options(const ReduceArgs& r) {
  cs::ReducerOptions o;
  o.mode = r.mode == "chunked" ? cs::ReductionMode::Chunked : cs::ReductionMode::Immediate;
  o.chunk_size = r.chunk_size;
  if (r.assert_bounds) {
    o.omega = r.omega;
    if (!o.omega && !r.stats_in.empty()) o.omega = omega_from_sidecar(r.stats_in);
    if (!o.omega) throw IoError("--assert-bounds needs --omega or --stats-in");
  }
  return o;
}

void write_reducer_stats(std::ostream& os, const cs::ReducerStats& s) {
  os << "events=" << s.events << '\n'
     << "max_columns=" << s.max_columns << '\n'
     << "max_rows=" << s.max_rows << '\n'
     << "max_tracked=" << s.max_tracked << '\n'
     << "column_additions=" << s.column_additions << '\n'
     << "remove_row_calls=" << s.remove_row_calls << '\n'
     << "cleared=" << s.cleared << '\n';
}

// ------------------------------------------------------------ convert

struct ConvertArgs {
  std::string in, out, stats;
  bool full = false;
};

template <typename Converter>
cs::ConversionStats run_converter(std::istream& in, const cs::EventSink& sink, cs::ConverterOptions opt) {
  Converter conv(sink, opt);
  cs::TowerReader reader(in);
  while (auto op = reader.next()) {
    try {
      conv.push(*op);
    } catch (const cs::InputError& e) {
      throw cs::FormatError(reader.line(), e.what());
    }
  }
  return conv.finish();
}

cs::ConversionStats convert_stream(std::istream& in, bool full, const cs::EventSink& sink,
                                   cs::ConverterOptions opt = {}) {
  return full ? run_converter<cs::FullConingConverter>(in, sink, opt)
              : run_converter<cs::ActiveConingConverter>(in, sink, opt);
}

int cmd_convert(const ConvertArgs& a) {
  Input in(a.in);
  Output out(a.out);
  std::ostream& os = out.get();
  const auto stats = convert_stream(in.get(), a.full, [&](const cs::FiltrationEvent& ev, std::uint64_t) {
    cs::write_event(os, ev);
  });
  out.close();
  if (!a.stats.empty()) {
    Output s(a.stats);
    cs::write_stats(s.get(), stats);
    s.close();
  }
  return 0;
}

// ------------------------------------------------------------ barcode

struct BarcodeArgs {
  std::string in, out, stats;
  ReduceArgs reduce;
};

int cmd_barcode(const BarcodeArgs& a) {
  const auto opt = reducer_options(a.reduce);
  Input in(a.in);
  cs::StreamingReducer reducer(opt);
  cs::FiltrationReader reader(in.get());
  while (auto ev = reader.next()) reducer.push(*ev);
  const cs::Barcode bars = reducer.finish();
  Output out(a.out);
  cs::write_barcode(out.get(), bars);
  out.close();
  if (!a.stats.empty()) {
    Output s(a.stats);
    write_reducer_stats(s.get(), reducer.stats());
    s.close();
  }
  return 0;
}

// ------------------------------------------------------------ pipeline

struct PipelineArgs {
  std::string in, out, tee, stats;
  bool full = false;
  std::size_t capacity = 4096;
  ReduceArgs reduce;
};

int cmd_pipeline(const PipelineArgs& a) {
  const auto opt = reducer_options(a.reduce);
  Input in(a.in);
  std::optional<Output> tee;
  if (!a.tee.empty()) tee.emplace(a.tee);

  cs::BoundedChannel<cs::FiltrationEvent> channel(a.capacity);
  cs::ConversionStats conv_stats;
  std::thread producer([&] {
    try {
      conv_stats = convert_stream(in.get(), a.full, [&](const cs::FiltrationEvent& ev, std::uint64_t) {
        if (!channel.push(ev)) throw std::runtime_error("cancelled");
      });
      channel.close();
    } catch (...) {
      channel.fail(std::current_exception());
    }
  });

  cs::StreamingReducer reducer(opt);
  cs::Barcode bars;
  try {
    while (auto ev = channel.pop()) {
      if (tee) cs::write_event(tee->get(), *ev);
      reducer.push(*ev);
    }
    bars = reducer.finish();
  } catch (...) {
    channel.cancel();
    producer.join();
    throw;
  }
  producer.join();
  if (tee) tee->close();

  Output out(a.out);
  cs::write_barcode(out.get(), bars);
  out.close();
  if (!a.stats.empty()) {
    Output s(a.stats);
    cs::write_stats(s.get(), conv_stats);
    write_reducer_stats(s.get(), reducer.stats());
    s.get() << "channel_capacity=" << channel.capacity() << '\n'
            << "channel_high_water=" << channel.high_water() << '\n';
    s.close();
  }
  return 0;
}

// ------------------------------------------------------------ generate

struct GenerateArgs {
  std::string out;
  std::uint64_t seed = 0;
  cs::RandomTowerParams random;
  cs::TorusParams torus;
  int k = 3;
  int t = 4;
  std::string barcode_in;
};

int emit_tower(const std::string& path, const std::vector<cs::TowerOp>& ops) {
  Output out(path);
  cs::write_tower(out.get(), ops);
  out.close();
  return 0;
}

int cmd_generate(const std::string& kind, GenerateArgs& a) {
  if (kind == "random") {
    a.random.seed = a.seed;
    if (a.random.n0 < 2) throw IoError("--n0 must be at least 2");
    return emit_tower(a.out, cs::random_tower(a.random));
  }
  if (kind == "torus") {
    a.torus.seed = a.seed;
    if (!(0 < a.torus.t2 && a.torus.t2 < a.torus.t1 && a.torus.t1 < 0.5))
      throw IoError("thresholds must satisfy 0 < t2 < t1 < 0.5");
    Output out(a.out);
    cs::TorusFlagTower gen(a.torus);
    while (auto op = gen.next()) cs::write_tower_op(out.get(), *op);
    out.close();
    return 0;
  }
  if (kind == "tightness") return emit_tower(a.out, cs::tightness_tower(a.k));
  if (kind == "fan") return emit_tower(a.out, cs::fan_fixture(a.t));
  if (kind == "sphere") return emit_tower(a.out, cs::sphere_fixture(a.t));
  if (kind == "neutral") return emit_tower(a.out, cs::neutral_fixture());
  // from-barcode
  Input in(a.barcode_in);
  const auto realized = cs::filtration_from_barcode(cs::read_barcode(in.get()));
  Output out(a.out);
  cs::write_filtration(out.get(), realized.events);
  out.close();
  return 0;
}

// ------------------------------------------------------------ verify

struct VerifyArgs {
  std::string in;
  std::vector<std::size_t> chunk_sizes{7, 1000};
  bool oracle_full = false;
  bool no_full = false;
  bool no_forest = false;
};

int cmd_verify(const VerifyArgs& a) {
  Input in(a.in);
  const auto tower = cs::read_tower(in.get());
  cs::VerifyOptions opt;
  opt.chunk_sizes = a.chunk_sizes;
  opt.oracle_on_full = a.oracle_full;
  opt.full_coning = !a.no_full;
  opt.check_forest = !a.no_forest;
  const auto rep = cs::verify_tower(tower, opt);
  std::cout << "filtration_size=" << rep.active.total_output << " size_bound=" << cs::size_bound(rep.active)
            << " bars=" << rep.reference.size() << '\n';
  for (const auto& p : rep.pipelines)
    std::cout << p.name << ' ' << (p.match ? "ok" : "MISMATCH") << (p.error.empty() ? "" : " " + p.error)
              << '\n';
  for (const auto& v : rep.violations) std::cout << "violation: " << v << '\n';
  if (!rep.ok()) throw Failed("verification failed");
  std::cout << "all pipelines agree\n";
  return 0;
}

// ------------------------------------------------------------ stats

struct StatsArgs {
  std::string in, out, forest_out;
  bool full = false;
  bool forest = false;
};

int cmd_stats(const StatsArgs& a) {
  Input in(a.in);
  cs::ConverterOptions opt;
  opt.record_costs = a.forest;
  opt.check_size_bound = false;
  const auto tower = cs::read_tower(in.get());
  const auto stats = a.full ? cs::convert_full_coning(tower, [](const cs::FiltrationEvent&, std::uint64_t) {}, opt)
                            : cs::convert(tower, [](const cs::FiltrationEvent&, std::uint64_t) {}, opt);
  Output out(a.out);
  cs::write_stats(out.get(), stats);
  out.close();
  if (a.forest) {
    const auto forest = cs::build_forest(tower, stats.costs);
    Output f(a.forest_out);
    cs::write_forest_csv(f.get(), forest);
    f.close();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming conversion of simplicial towers and space-bounded barcodes"};
  app.require_subcommand(1);

  ConvertArgs conv;
  auto* c = app.add_subcommand("convert", "tower -> filtration");
  c->add_option("--in", conv.in, "tower file (default stdin)");
  c->add_option("--out", conv.out, "filtration file (default stdout)");
  c->add_flag("--full-coning", conv.full, "cone onto the full closed star");
  c->add_option("--stats", conv.stats, "write key=value stats here");

  BarcodeArgs bar;
  auto* b = app.add_subcommand("barcode", "filtration -> barcode");
  b->add_option("--in", bar.in, "filtration file (default stdin)");
  b->add_option("--out", bar.out, "barcode file (default stdout)");
  b->add_option("--stats", bar.stats, "write reducer stats here");
  add_reduce_flags(b, bar.reduce);

  PipelineArgs pipe;
  auto* p = app.add_subcommand("pipeline", "tower -> barcode through a bounded channel");
  p->add_option("--in", pipe.in, "tower file (default stdin)");
  p->add_option("--out", pipe.out, "barcode file (default stdout)");
  p->add_option("--tee", pipe.tee, "also write the filtration here");
  p->add_option("--stats", pipe.stats, "write converter and reducer stats here");
  p->add_option("--channel-capacity", pipe.capacity, "events buffered between the stages")
      ->check(CLI::PositiveNumber);
  p->add_flag("--full-coning", pipe.full, "cone onto the full closed star");
  add_reduce_flags(p, pipe.reduce);

  GenerateArgs gen;
  std::string gen_kind;
  auto* g = app.add_subcommand("generate", "write a generated tower or filtration");
  g->require_subcommand(1);
  g->fallthrough();
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--out", gen.out, "output file (default stdout)");
  auto* gr = g->add_subcommand("random", "random incremental tower");
  gr->add_option("--n0", gen.random.n0, "vertex pool size");
  gr->add_option("--p", gen.random.p_include, "inclusion probability")->check(CLI::Range(0.0, 1.0));
  gr->add_option("--max-dim", gen.random.max_dim, "dimension cap");
  gr->add_option("--budget", gen.random.op_budget, "op budget (0 = 10·n0²)");
  auto* gt = g->add_subcommand("tightness", "balanced contraction of 2^k edges");
  gt->add_option("--k", gen.k, "log2 of the edge count")->check(CLI::Range(1, 24));
  auto* gto = g->add_subcommand("torus", "flag tower of points moving on the flat torus");
  gto->add_option("--points", gen.torus.num_points, "number of moving points");
  gto->add_option("--t1", gen.torus.t1, "edge threshold");
  gto->add_option("--t2", gen.torus.t2, "contraction threshold");
  gto->add_option("--speed", gen.torus.speed, "distance per step");
  gto->add_option("--steps", gen.torus.steps, "time steps");
  gto->add_option("--max-dim", gen.torus.max_dim, "clique dimension cap");
  gto->add_option("--max-ops", gen.torus.max_ops, "stop after this many ops (0 = no limit)");
  auto* gf = g->add_subcommand("fan", "t empty triangles on a common edge, then contract it");
  gf->add_option("--t", gen.t, "triangles")->check(CLI::NonNegativeNumber);
  auto* gs = g->add_subcommand("sphere", "t punctured octahedra on a common edge, then contract it");
  gs->add_option("--t", gen.t, "spheres")->check(CLI::NonNegativeNumber);
  auto* gn = g->add_subcommand("neutral", "contraction that leaves homology unchanged");
  auto* gb = g->add_subcommand("from-barcode", "filtration realizing a barcode");
  gb->add_option("--in", gen.barcode_in, "barcode file (default stdin)");
  for (auto* sub : {gr, gt, gto, gf, gs, gn, gb})
    sub->callback([&gen_kind, sub] { gen_kind = sub->get_name(); });

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "cross-check all pipelines against the oracle");
  v->add_option("--in", ver.in, "tower file (default stdin)");
  v->add_option("--chunk-sizes", ver.chunk_sizes, "chunk sizes to test")->delimiter(',');
  v->add_flag("--oracle-full", ver.oracle_full, "also run the oracle on the full-coning filtration");
  v->add_flag("--no-full", ver.no_full, "skip the full-coning pipelines");
  v->add_flag("--no-forest", ver.no_forest, "skip the contracting-forest checks");

  StatsArgs st;
  auto* s = app.add_subcommand("stats", "conversion statistics");
  s->add_option("--in", st.in, "tower file (default stdin)");
  s->add_option("--out", st.out, "stats file (default stdout)");
  s->add_flag("--full-coning", st.full, "measure the full-coning baseline");
  s->add_flag("--forest", st.forest, "emit the contracting forest as CSV");
  s->add_option("--forest-out", st.forest_out, "forest CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputFailure;
  }

  try {
    if (*c) return cmd_convert(conv);
    if (*b) return cmd_barcode(bar);
    if (*p) return cmd_pipeline(pipe);
    if (*g) return cmd_generate(gen_kind, gen);
    if (*v) return cmd_verify(ver);
    if (*s) return cmd_stats(st);
  } catch (const Failed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const cs::BoundViolation& e) {
    std::cerr << "bound violation: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const cs::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputFailure;
  }
  return 0;
}
