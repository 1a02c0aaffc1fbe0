#pragma once

#include "balanced/instance_io.hpp"
#include "balanced/oracle.hpp"
#include "balanced/rotation.hpp"
#include "balanced/sliding.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace balanced {

inline json to_json(const Direction& d) { return {{"dx", static_cast<std::int64_t>(d.dx())}, {"dy", static_cast<std::int64_t>(d.dy())}}; }

inline json to_json(const BalancedLine& l) { return {{"red", l.red}, {"blue", l.blue}}; }

inline json balanced_json(const Instance& inst, const BalancedSet& lines) {
  json arr = json::array();
  for (const auto& l : lines) arr.push_back(to_json(l));
  return {{"delta", inst.delta()}, {"count", lines.size()}, {"lines", arr}};
}

inline std::string subset_name(const Subset& s) {
  switch (s.kind) {
    case SubsetKind::AllRed: return "red";
    case SubsetKind::AllBlue: return "blue";
    case SubsetKind::Explicit: break;
  }
  std::string out;
  for (PointId id : s.ids) out += (out.empty() ? "" : ",") + std::to_string(id);
  return out;
}

/// First line of a trace dump.
inline json trace_header(const RotationTrace& trace) {
  return {{"subset", subset_name(trace.spec.subset)},
          {"k", trace.spec.k},
          {"start", to_json(trace.spec.start)},
          {"members", trace.members},
          {"initial_pivot", trace.initial_pivot},
          {"initial_omega", trace.initial_omega},
          {"events", trace.events.size()}};
}

inline json to_json(const RotationEvent& e) {
  json j = {{"dir", to_json(e.at)}};
  if (const auto* pc = std::get_if<PivotChange>(&e.change)) {
    j["kind"] = "pivot";
    j["from"] = pc->from;
    j["to"] = pc->to;
  } else {
    const auto& wc = std::get<WeightChange>(e.change);
    j["kind"] = "weight";
    j["crossed"] = wc.crossed;
    j["end"] = to_string(wc.end);
    j["omega_from"] = wc.from;
  }
  j["pivot"] = e.pivot;
  j["omega"] = e.omega;
  return j;
}

inline json to_json(const Transition& t) {
  return {{"dir", to_json(t.at)},     {"kind", "transition"},        {"step", t.is_up() ? "up" : "down"},
          {"pivot", t.pivot},         {"crossed", t.crossed},        {"end", to_string(t.end)},
          {"omega_from", t.from},     {"omega", t.to},               {"balanced", t.balanced}};
}

inline json to_json(const SlidingRotation& sr) {
  json stops = json::array();
  for (const auto& s : sr.stops()) stops.push_back({{"dir", to_json(s.at)}, {"path", s.path}});
  return {{"color", std::string(1, color_letter(sr.color()))},
          {"origin", sr.origin},
          {"level", sr.level},
          {"start", to_json(sr.start())},
          {"initial_pivot", sr.initial_pivot()},
          {"stops", stops}};
}

inline json to_json(const Certificate& cert) {
  json lines = json::array();
  for (const auto& cl : cert.lines)
    lines.push_back({{"red", cl.line.red}, {"blue", cl.line.blue}, {"provenance", to_string(cl.provenance)}});
  json gamma = nullptr;
  if (cert.gamma) {
    gamma = to_json(*cert.gamma);
    gamma["waist"] = cert.waist->value;
    gamma["achieved_at"] = to_json(cert.waist->achieved_at);
  }
  return {{"gamma", gamma},
          {"F", cert.F},
          {"H", cert.H},
          {"G", cert.G},
          {"lines", lines},
          {"total", cert.total},
          {"target", cert.target},
          {"exhausted_recharges", cert.exhausted_recharges},
          {"short_levels", cert.short_levels}};
}

/// Checks a certificate document against an instance: every line balanced,
/// no line repeated, the stated total matching and at least r.
inline std::optional<std::string> check_certificate_json(const Instance& inst, const json& doc) {
  if (!doc.is_object() || !doc.contains("lines") || !doc["lines"].is_array() || !doc.contains("total"))
    return "certificate needs \"lines\" and \"total\"";
  std::set<BalancedLine> seen;
  for (const auto& l : doc["lines"]) {
    if (!l.contains("red") || !l.contains("blue") || !l["red"].is_number_unsigned() || !l["blue"].is_number_unsigned())
      return "line entries need non-negative \"red\" and \"blue\" ids";
    PointId red = l["red"].get<PointId>(), blue = l["blue"].get<PointId>();
    if (red >= inst.size() || blue >= inst.size()) return "point id out of range";
    if (inst.color(red) != Color::Red || inst.color(blue) != Color::Blue)
      return "line " + std::to_string(red) + "-" + std::to_string(blue) + " does not join a red and a blue point";
    if (!is_balanced(red, blue, inst)) return "line " + std::to_string(red) + "-" + std::to_string(blue) + " is not balanced";
    if (!seen.insert(make_balanced_line(inst, red, blue)).second)
      return "line " + std::to_string(red) + "-" + std::to_string(blue) + " repeated";
  }
  if (!doc["total"].is_number_integer() || doc["total"].get<std::int64_t>() != static_cast<std::int64_t>(seen.size()))
    return "total does not match the number of lines";
  if (static_cast<int>(seen.size()) < inst.r()) return "fewer lines than red points";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Run reports.

/// Outcome of one named check; `passed` is empty when it does not apply.
struct CheckOutcome {
  std::string name;
  std::optional<bool> passed;
  std::string detail;
};

struct RunReport {
  int r = 0;
  int b = 0;
  int delta = 0;
  std::size_t balanced = 0;
  std::optional<Certificate> certificate;
  std::vector<CheckOutcome> checks;
  std::vector<std::pair<std::string, double>> timings_ms;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed.value_or(true); });
  }

  /// Names of failed checks.
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (c.passed == false) out.push_back(c.name);
    return out;
  }
};

namespace detail {

class PhaseTimer {
 public:
  explicit PhaseTimer(RunReport& report) : report_(report) {}

  template <class F>
  auto run(const std::string& name, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    struct Record {
      PhaseTimer* self;
      std::string name;
      std::chrono::steady_clock::time_point t0;
      ~Record() {
        std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - t0;
        self->report_.timings_ms.emplace_back(name, d.count());
      }
    } record{this, name, t0};
    return f();
  }

 private:
  RunReport& report_;
};

template <class F>
CheckOutcome guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {name, false, e.what()};
  }
}

// Every delta boundary transition of every plain red and blue rotation is a
// balanced line of the oracle set.
inline CheckOutcome check_transitions(const Instance& inst, const BalancedSet& oracle) {
  for (Color c : {Color::Red, Color::Blue}) {
    const int m = c == Color::Red ? inst.r() : inst.b();
    const int low = c == Color::Red ? inst.delta() : inst.delta() - 1;
    for (int k = 0; k < m; ++k) {
      auto trace = run_rotation({Subset::all(c), k, Direction::vertical()}, inst);
      for (const auto& t : transitions_at(trace, inst, low))
        if (!t.balanced || !oracle.count(balanced_line_of(inst, t)))
          return {"transitions", false,
                  std::string(1, color_letter(c)) + "^" + std::to_string(k) + " transition is not a balanced line"};
    }
  }
  return {"transitions", true, ""};
}

inline CheckOutcome check_halving(const Instance& inst, const BalancedSet& oracle) {
  if (inst.r() % 2 == 0) return {"halving", std::nullopt, ""};
  BalancedLine l = find_balanced_halving(inst);
  auto line = DirectedLine::spanned_by(inst, l.red, l.blue);
  int right = 0, left = 0;
  for (PointId s = 0; s < inst.size(); ++s) {
    right += line.side(inst.pos(s)) == Side::Right;
    left += line.side(inst.pos(s)) == Side::Left;
  }
  const int half = (static_cast<int>(inst.size()) - 2) / 2;
  bool ok = right == half && left == half && oracle.count(l);
  return {"halving", ok, std::to_string(l.red) + "-" + std::to_string(l.blue)};
}

inline CheckOutcome check_BR(const Instance& inst) {
  if (inst.r() == 0) return {"lemma_BR", std::nullopt, ""};
  for (int j = 0; j <= inst.r() / 2 && j + inst.delta() <= inst.b() - 1; ++j)
    if (!check_lemma_BR(inst, j)) return {"lemma_BR", false, "j=" + std::to_string(j)};
  return {"lemma_BR", true, ""};
}

}  // namespace detail

/// Runs the oracle, the lemma checkers and the certificate on one instance.
/// Failures are recorded as checks, never thrown.
inline RunReport run_report(const Instance& inst) {
  RunReport rep;
  rep.r = inst.r();
  rep.b = inst.b();
  rep.delta = inst.delta();
  detail::PhaseTimer timer(rep);

  BalancedSet naive = timer.run("naive", [&] { return enumerate_naive(inst); });
  BalancedSet sweep = timer.run("sweep", [&] { return enumerate_sweep(inst); });
  rep.balanced = naive.size();
  rep.checks.push_back({"lower_bound", naive.size() >= static_cast<std::size_t>(inst.r()), ""});
  rep.checks.push_back({"sweep_equals_naive", sweep == naive, ""});

  timer.run("lemmas", [&] {
    rep.checks.push_back(detail::guarded("transitions", [&] { return detail::check_transitions(inst, naive); }));
    rep.checks.push_back(detail::guarded("halving", [&] { return detail::check_halving(inst, naive); }));
    rep.checks.push_back(detail::guarded("lemma_BR", [&] { return detail::check_BR(inst); }));
    return 0;
  });

  std::optional<SlidingRotation> gamma;
  try {
    gamma = timer.run("gamma", [&] { return inst.r() > 0 ? find_gamma(inst) : std::nullopt; });
  } catch (const Error& e) {
    rep.checks.push_back({"gamma", false, e.what()});
    return rep;
  }

  if (gamma) {
    timer.run("accounting", [&] {
      std::optional<Decomposition> dec;
      rep.checks.push_back(detail::guarded("decomposition", [&] {
        dec = decompose_FHG(inst, *gamma);
        return CheckOutcome{"decomposition", true, ""};
      }));
      if (!dec) return 0;
      rep.checks.push_back(detail::guarded("F+H", [&] {
        lemma_FH_lines(inst, *gamma, *dec);
        return CheckOutcome{"F+H", true, ""};
      }));
      std::vector<GLevel> levels;
      rep.checks.push_back(detail::guarded("G_transitions", [&] {
        levels = lemma_G_transitions(inst, *gamma, *dec);
        return CheckOutcome{"G_transitions", true, ""};
      }));
      if (rep.checks.back().passed != true) {
        rep.checks.push_back({"recharge", std::nullopt, ""});
        return 0;
      }
      rep.checks.push_back(detail::guarded("recharge", [&] {
        for (const auto& level : levels)
          for (const auto& t : level.transitions) recharge(inst, *gamma, *dec, t);
        return CheckOutcome{"recharge", true, ""};
      }));
      return 0;
    });
  } else {
    for (const char* name : {"decomposition", "F+H", "G_transitions", "recharge"}) rep.checks.push_back({name, std::nullopt, ""});
  }

  rep.checks.push_back(detail::guarded("certificate", [&] {
    rep.certificate = timer.run("certificate", [&] { return certify(inst, gamma); });
    return CheckOutcome{"certificate", true, ""};
  }));
  return rep;
}

inline json to_json(const RunReport& rep, bool with_timings) {
  json checks = json::object();
  for (const auto& c : rep.checks) checks[c.name] = c.passed ? json(*c.passed) : json(nullptr);
  json details = json::object();
  for (const auto& c : rep.checks)
    if (!c.detail.empty() && c.passed == false) details[c.name] = c.detail;
  json cert = nullptr;
  if (rep.certificate) {
    const auto& c = *rep.certificate;
    cert = {{"total", c.total},
            {"target", c.target},
            {"gamma", c.gamma ? json(c.gamma->origin.empty() ? "composite" : c.gamma->origin) : json(nullptr)},
            {"gamma_color", c.gamma ? json(std::string(1, color_letter(c.gamma->color()))) : json(nullptr)},
            {"waist", c.waist ? json(c.waist->value) : json(nullptr)},
            {"exhausted_recharges", c.exhausted_recharges},
            {"short_levels", c.short_levels}};
  }
  json j = {{"r", rep.r},         {"b", rep.b},     {"delta", rep.delta}, {"balanced", rep.balanced},
            {"certificate", cert}, {"ok", rep.ok()}, {"checks", checks}};
  if (!details.empty()) j["failures"] = details;
  if (with_timings) {
    json t = json::object();
    for (const auto& [name, ms] : rep.timings_ms) t[name] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

}  // namespace balanced
