// bl: generate instances, enumerate balanced lines, trace rotations,
// verify the lower bound and draw figures.
//
// Exit codes: 0 success, 2 invalid parameters, 3 invalid input instance,
// 4 naive/sweep mismatch, 5 lemma or certificate failure.

#include "balanced/generators.hpp"
#include "balanced/report.hpp"
#include "balanced/svg.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

using namespace balanced;

namespace {

constexpr int kExitParams = 2;
constexpr int kExitInput = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitLemma = 5;

struct Failure {
  int code;
  std::string message;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("BL_SEED");
  if (!env || !*env) return 1;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw Failure{kExitParams, "BL_SEED must be a non-negative integer"};
  }
}

Direction parse_direction(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Failure{kExitParams, "direction must be DX,DY: " + text};
  try {
    std::size_t a = 0, b = 0;
    std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
    long long dx = std::stoll(xs, &a), dy = std::stoll(ys, &b);
    if (a != xs.size() || b != ys.size()) throw std::invalid_argument(text);
    return Direction(dx, dy);
  } catch (const Error&) {
    throw Failure{kExitParams, "direction must be nonzero"};
  } catch (const std::exception&) {
    throw Failure{kExitParams, "direction must be DX,DY: " + text};
  }
}

Subset parse_subset(const std::string& text) {
  if (text == "red") return Subset::all_red();
  if (text == "blue") return Subset::all_blue();
  std::vector<PointId> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      ids.push_back(static_cast<PointId>(v));
    } catch (const std::exception&) {
      throw Failure{kExitParams, "subset must be red, blue or a comma-separated id list"};
    }
  }
  if (ids.empty()) throw Failure{kExitParams, "empty subset"};
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return Subset::of(ids);
}

Instance load(const std::string& path, bool swap) {
  try {
    auto pts = points_from_json(read_json_file(path));
    if (swap) pts = swap_colors(pts);
    return validate(std::move(pts));
  } catch (const Error& e) {
    throw Failure{kExitInput, e.what()};
  } catch (const json::exception& e) {
    throw Failure{kExitInput, path + ": " + e.what()};
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kExitParams, "cannot write " + path};
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string kind = "random";
  std::optional<std::uint64_t> seed;
  int r = 3;
  int b = 5;
  std::int64_t bound = 200;
  std::int64_t inner = 40;
  std::string core = "blue";
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  Instance inst = [&] {
    try {
      if (a.kind == "separated") return gen_separated_convex(a.r, a.b);
      const std::uint64_t seed = a.seed ? *a.seed : default_seed();
      if (a.kind == "clustered")
        return gen_clustered(seed, a.r, a.b, a.bound, a.inner, a.core == "red" ? Color::Red : Color::Blue);
      return gen_random(seed, a.r, a.b, a.bound);
    } catch (const Error& e) {
      throw Failure{kExitParams, e.what()};
    }
  }();
  write_output(a.out, instance_text(inst));
  std::cerr << (a.out.empty() ? "instance" : a.out) << ": r=" << inst.r() << " b=" << inst.b() << " delta=" << inst.delta()
            << "\n";
  return 0;
}

// --- enumerate -------------------------------------------------------------

struct EnumerateArgs {
  std::string input;
  std::string method = "sweep";
  std::string format = "csv";
};

int cmd_enumerate(const EnumerateArgs& a, bool swap) {
  Instance inst = load(a.input, swap);
  BalancedSet lines;
  if (a.method == "naive") {
    lines = enumerate_naive(inst);
  } else if (a.method == "sweep") {
    lines = enumerate_sweep(inst);
  } else {
    lines = enumerate_naive(inst);
    if (enumerate_sweep(inst) != lines) {
      std::cerr << "error: sweep and naive enumerations differ on " << a.input << "\n";
      return kExitMismatch;
    }
  }
  if (a.format == "json") {
    std::cout << balanced_json(inst, lines).dump() << "\n";
  } else {
    std::cout << balanced_csv(inst, lines) << "# count=" << lines.size() << "\n";
  }
  return 0;
}

// --- trace -----------------------------------------------------------------

struct TraceArgs {
  std::string input;
  std::string subset = "red";
  int k = 0;
  std::string start;
  bool transitions = false;
  std::optional<int> low;
};

RotationTrace make_trace(const Instance& inst, const std::string& subset, int k, const std::string& start) {
  RotationSpec spec{parse_subset(subset), k, start.empty() ? Direction::vertical() : parse_direction(start)};
  try {
    return run_rotation(spec, inst);
  } catch (const Error& e) {
    throw Failure{kExitParams, e.what()};
  }
}

int cmd_trace(const TraceArgs& a, bool swap) {
  Instance inst = load(a.input, swap);
  RotationTrace trace = make_trace(inst, a.subset, a.k, a.start);
  std::cout << trace_header(trace).dump() << "\n";
  if (!a.transitions) {
    for (const auto& e : trace.events) std::cout << to_json(e).dump() << "\n";
    return 0;
  }
  const int low = a.low ? *a.low : trace.spec.subset.kind == SubsetKind::AllBlue ? inst.delta() - 1 : inst.delta();
  for (const auto& t : transitions_at(trace, inst, low)) std::cout << to_json(t).dump() << "\n";
  return 0;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string input;
  std::optional<int> batch;
  std::optional<std::uint64_t> seed;
  std::string kind = "random";
  int max_points = 30;
  unsigned jobs = 1;
  bool timings = false;
  std::string certificate_out;
  std::string check;
};

int verify_one(const VerifyArgs& a, bool swap) {
  Instance inst = load(a.input, swap);
  if (!a.check.empty()) {
    json doc;
    try {
      doc = read_json_file(a.check);
    } catch (const Error& e) {
      throw Failure{kExitInput, e.what()};
    }
    if (auto problem = check_certificate_json(inst, doc)) {
      std::cerr << "certificate rejected: " << *problem << "\n";
      return kExitLemma;
    }
    std::cerr << "certificate accepted\n";
    return 0;
  }
  RunReport rep = run_report(inst);
  json j = {{"input", a.input}};
  j.update(to_json(rep, a.timings));
  std::cout << j.dump() << "\n";
  if (!a.certificate_out.empty() && rep.certificate) write_output(a.certificate_out, to_json(*rep.certificate).dump(2) + "\n");
  if (!rep.ok()) {
    for (const auto& c : rep.checks)
      if (c.passed == false) std::cerr << "check " << c.name << " failed on " << a.input << ": " << c.detail << "\n";
    return kExitLemma;
  }
  return 0;
}

int verify_batch(const VerifyArgs& a) {
  const int n = *a.batch;
  if (n < 0) throw Failure{kExitParams, "batch size must be non-negative"};
  const std::uint64_t base = a.seed ? *a.seed : default_seed();
  const SampleKind kind = a.kind == "clustered" ? SampleKind::Clustered : SampleKind::Random;
  const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, std::max(1, n)));

  std::vector<std::optional<std::string>> lines(n);
  std::vector<char> failed(n, 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<int> next{0};
  auto t0 = std::chrono::steady_clock::now();

  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      const std::uint64_t seed = base + static_cast<std::uint64_t>(i);
      json j = {{"seed", seed}, {"kind", a.kind}};
      bool bad = false;
      try {
        Instance inst = sample_instance(seed, kind, a.max_points);
        RunReport rep = run_report(inst);
        j.update(to_json(rep, a.timings));
        bad = !rep.ok();
      } catch (const Error& e) {
        j["ok"] = false;
        j["error"] = e.what();
        bad = true;
      }
      std::lock_guard<std::mutex> lock(mu);
      lines[i] = j.dump();
      failed[i] = bad;
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);

  int failures = 0;
  for (int i = 0; i < n; ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return lines[i].has_value(); });
    std::cout << *lines[i] << "\n";
    failures += failed[i];
  }
  for (auto& t : pool) t.join();
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  std::cerr << n << " instances, " << failures << " failed";
  if (a.timings) std::cerr << ", " << dt.count() << " s";
  std::cerr << "\n";
  return failures ? kExitLemma : 0;
}

int cmd_verify(const VerifyArgs& a, bool swap) {
  if (a.batch) {
    if (!a.input.empty()) throw Failure{kExitParams, "give either an instance file or --batch"};
    return verify_batch(a);
  }
  if (a.input.empty()) throw Failure{kExitParams, "verify needs an instance file or --batch"};
  return verify_one(a, swap);
}

// --- plot ------------------------------------------------------------------

struct PlotArgs {
  std::string input;
  std::string what = "points";
  std::string out;
  std::string subset = "red";
  int k = 0;
  std::string at;
};

int cmd_plot(const PlotArgs& a, bool swap) {
  Instance inst = load(a.input, swap);
  std::string svg;
  if (a.what == "points") {
    svg = plot_points(inst);
  } else if (a.what == "balanced") {
    svg = plot_balanced(inst, enumerate_sweep(inst));
  } else if (a.what == "rotation") {
    RotationTrace trace = make_trace(inst, a.subset, a.k, "");
    Direction at = a.at.empty() ? trace.profile.front().sample : parse_direction(a.at);
    for (const auto& e : trace.events)
      if (e.at == at) throw Failure{kExitParams, "--at must not be an event direction of the rotation"};
    svg = plot_rotation(inst, trace, at);
  } else {
    try {
      svg = plot_certificate(inst, verify_lower_bound(inst));
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitLemma;
    }
  }
  write_output(a.out, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced lines of red and blue point sets"};
  app.require_subcommand(1);
  bool swap = false;
  app.add_flag("--swap-colors", swap, "Exchange red and blue when reading an instance");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a random, separated or clustered instance");
  g->add_option("kind", gen.kind, "random | separated | clustered")->check(CLI::IsMember({"random", "separated", "clustered"}));
  g->add_option("--seed", gen.seed, "Random seed (default: $BL_SEED or 1)");
  g->add_option("-r", gen.r, "Number of red points")->capture_default_str();
  g->add_option("-b", gen.b, "Number of blue points")->capture_default_str();
  g->add_option("--bound", gen.bound, "Coordinates lie in [-bound, bound]")->capture_default_str();
  g->add_option("--inner", gen.inner, "Box of the packed color (clustered)")->capture_default_str();
  g->add_option("--core", gen.core, "Packed color (clustered)")->check(CLI::IsMember({"red", "blue"}))->capture_default_str();
  g->add_option("-o,--output", gen.out, "Output file (default: stdout)");

  EnumerateArgs en;
  auto* e = app.add_subcommand("enumerate", "List the balanced lines of an instance");
  e->add_option("input", en.input, "Instance JSON")->required();
  e->add_option("--method", en.method, "naive | sweep | both")->check(CLI::IsMember({"naive", "sweep", "both"}))->capture_default_str();
  e->add_option("--format", en.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  TraceArgs tr;
  auto* t = app.add_subcommand("trace", "Dump the events of a rotation as JSON lines");
  t->add_option("input", tr.input, "Instance JSON")->required();
  t->add_option("--subset", tr.subset, "red, blue or a comma-separated id list")->capture_default_str();
  t->add_option("-k", tr.k, "Points of the subset kept strictly right")->capture_default_str();
  t->add_option("--start", tr.start, "Start direction DX,DY (default 0,1)");
  t->add_flag("--transitions", tr.transitions, "Only steps between --low and --low + 1, with balance flags");
  t->add_option("--low", tr.low, "Lower weight of the transitions (default: delta, delta-1 for blue)");

  VerifyArgs ve;
  auto* v = app.add_subcommand("verify", "Certify the lower bound and run all lemma checks");
  v->add_option("input", ve.input, "Instance JSON");
  v->add_option("--batch", ve.batch, "Verify N sampled instances instead of a file");
  v->add_option("--seed", ve.seed, "First batch seed (default: $BL_SEED or 1)");
  v->add_option("--kind", ve.kind, "Batch sampler: random | clustered")->check(CLI::IsMember({"random", "clustered"}))->capture_default_str();
  v->add_option("--max-points", ve.max_points, "Largest batch instance")->check(CLI::Range(2, 60))->capture_default_str();
  v->add_option("-j,--jobs", ve.jobs, "Worker threads for --batch")->check(CLI::Range(1u, 256u))->capture_default_str();
  v->add_flag("--timings", ve.timings, "Include wall-clock timings (output is then not reproducible)");
  v->add_option("--certificate", ve.certificate_out, "Write the certificate JSON to this file");
  v->add_option("--check", ve.check, "Check a certificate JSON file against the instance instead");

  PlotArgs pl;
  auto* p = app.add_subcommand("plot", "Write an SVG figure");
  p->add_option("input", pl.input, "Instance JSON")->required();
  p->add_option("--what", pl.what, "points | balanced | rotation | certificate")
      ->check(CLI::IsMember({"points", "balanced", "rotation", "certificate"}))
      ->capture_default_str();
  p->add_option("-o,--output", pl.out, "Output file (default: stdout)");
  p->add_option("--subset", pl.subset, "Rotation subset for --what rotation")->capture_default_str();
  p->add_option("-k", pl.k, "Rotation level for --what rotation")->capture_default_str();
  p->add_option("--at", pl.at, "Direction DX,DY of the rotation snapshot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : kExitParams;
  }

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (e->parsed()) return cmd_enumerate(en, swap);
    if (t->parsed()) return cmd_trace(tr, swap);
    if (v->parsed()) return cmd_verify(ve, swap);
    return cmd_plot(pl, swap);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitLemma;
  }
}
