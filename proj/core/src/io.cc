#include "mrplab/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mrplab/errors.h"

namespace mrplab {
namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  return j.get<double>();
}

Count count(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ValidationError(what + " must be a nonnegative integer");
  return j.get<Count>();
}

std::size_t index(const json& j, std::size_t n, const std::string& what) {
  const Count c = count(j, what);
  if (c >= n) throw ValidationError(what + " is out of range");
  return static_cast<std::size_t>(c);
}

// Accepts a flat row-major array or a list of rows.
template <class T, class Get>
std::vector<T> matrix(const json& j, std::size_t n, const std::string& what, Get get) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  std::vector<T> out;
  out.reserve(n * n);
  if (j.size() == n && n > 0 && j.front().is_array()) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = j[i];
      if (!row.is_array() || row.size() != n)
        throw ValidationError(what + " row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
      for (const auto& x : row) out.push_back(get(x, what));
    }
  } else {
    if (j.size() != n * n) throw ValidationError(what + " must have num_states^2 entries");
    for (const auto& x : j) out.push_back(get(x, what));
  }
  return out;
}

template <class T>
json rows(const std::vector<T>& flat, std::size_t n) {
  json out = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(flat[i * n + k]);
    out.push_back(std::move(row));
  }
  return out;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MrpSpec parse_mrp(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ValidationError("MRP file must hold a JSON object");
  const Count n = count(field(j, "num_states"), "num_states");
  if (n == 0 || n > 100000) throw ValidationError("num_states must be positive and reasonable");
  MrpSpec s = MrpSpec::empty(n, number(field(j, "gamma"), "gamma"));

  const auto& sp = field(j, "start_probs");
  if (!sp.is_array() || sp.size() != n) throw ValidationError("start_probs must have num_states entries");
  for (std::size_t i = 0; i < n; ++i) s.start_probs[i] = number(sp[i], "start_probs");

  s.transitions = matrix<double>(field(j, "transitions"), n, "transitions",
                                 [](const json& x, const std::string& w) { return number(x, w); });

  const auto& term = field(j, "terminal");
  if (!term.is_array() || term.size() != n) throw ValidationError("terminal must have num_states entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (term[i].is_boolean()) s.terminal[i] = term[i].get<bool>();
    else if (term[i].is_number_integer()) s.terminal[i] = term[i].get<long long>() != 0;
    else throw ValidationError("terminal entries must be booleans");
  }

  if (auto it = j.find("rewards"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("rewards must be a list");
    std::vector<bool> seen(n * n, false);
    for (const auto& r : *it) {
      const std::size_t from = index(field(r, "from"), n, "reward from");
      const std::size_t to = index(field(r, "to"), n, "reward to");
      if (seen[from * n + to])
        throw ValidationError("duplicate reward for edge " + std::to_string(from) + "->" + std::to_string(to));
      seen[from * n + to] = true;
      const auto& kind = field(r, "kind");
      if (!kind.is_string()) throw ValidationError("reward kind must be \"det\" or \"discrete\"");
      const auto k = kind.get<std::string>();
      if (k == "det") {
        s.rewards[from * n + to] = EdgeReward::deterministic(number(field(r, "value"), "reward value"));
      } else if (k == "discrete") {
        const auto& sup = field(r, "support");
        if (!sup.is_array() || sup.empty()) throw ValidationError("reward support must be a nonempty list");
        std::vector<RewardOutcome> out;
        for (const auto& o : sup) {
          if (o.is_array() && o.size() == 2)
            out.push_back({number(o[0], "support value"), number(o[1], "support probability")});
          else if (o.is_object())
            out.push_back({number(field(o, "value"), "support value"),
                           number(field(o, "prob"), "support probability")});
          else
            throw ValidationError("support entries must be {value, prob} objects");
        }
        s.rewards[from * n + to] = EdgeReward::discrete(std::move(out));
      } else {
        throw ValidationError("unknown reward kind \"" + k + "\"");
      }
    }
  }
  require_valid(s);
  return s;
}

MrpSpec load_mrp(const std::string& path) { return parse_mrp(read_file(path)); }

std::string mrp_to_json(const MrpSpec& s) {
  const std::size_t n = s.num_states;
  json j;
  j["num_states"] = n;
  j["start_probs"] = s.start_probs;
  j["transitions"] = rows(s.transitions, n);
  json rewards = json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& r = s.reward(i, k);
      if (s.p(i, k) == 0.0 && r.is_deterministic() && r.mean() == 0.0) continue;
      json e{{"from", i}, {"to", k}};
      if (r.is_deterministic()) {
        e["kind"] = "det";
        e["value"] = r.mean();
      } else {
        e["kind"] = "discrete";
        json sup = json::array();
        for (const auto& o : r.outcomes()) sup.push_back({{"value", o.value}, {"prob", o.probability}});
        e["support"] = std::move(sup);
      }
      rewards.push_back(std::move(e));
    }
  j["rewards"] = std::move(rewards);
  j["gamma"] = s.discount;
  std::vector<bool> term(s.terminal.begin(), s.terminal.end());
  j["terminal"] = term;
  return j.dump(2) + "\n";
}

SuffStat parse_suffstat(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ValidationError("statistic file must hold a JSON object");
  const Count n = count(field(j, "num_states"), "num_states");
  if (n == 0 || n > 100000) throw ValidationError("num_states must be positive and reasonable");
  SuffStat s(n);
  s.num_paths = count(field(j, "num_paths"), "num_paths");
  auto counts = [&](const char* key) {
    const auto& a = field(j, key);
    if (!a.is_array() || a.size() != n) throw ValidationError(std::string(key) + " must have num_states entries");
    std::vector<Count> out;
    for (const auto& x : a) out.push_back(count(x, key));
    return out;
  };
  s.start_counts = counts("start_counts");
  s.transition_counts = matrix<Count>(field(j, "transition_counts"), n, "transition_counts",
                                      [](const json& x, const std::string& w) { return count(x, w); });
  if (j.contains("visit_counts")) {
    s.visit_counts = counts("visit_counts");
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      s.visit_counts[i] = s.start_counts[i];
      for (std::size_t k = 0; k < n; ++k) s.visit_counts[i] += s.mu(k, i);
    }
  }
  if (j.contains("reward_sums"))
    s.reward_sums = matrix<double>(j["reward_sums"], n, "reward_sums",
                                   [](const json& x, const std::string& w) { return number(x, w); });
  if (auto it = j.find("reward_events"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("reward_events must be a list");
    for (const auto& e : *it) {
      const std::size_t from = index(field(e, "from"), n, "reward_events from");
      const std::size_t to = index(field(e, "to"), n, "reward_events to");
      const auto& c = field(e, "counts");
      if (!c.is_array()) throw ValidationError("reward_events counts must be a list");
      std::vector<Count> v;
      for (const auto& x : c) v.push_back(count(x, "reward_events counts"));
      s.reward_events[{from, to}] = std::move(v);
    }
  }
  auto report = s.check();
  if (!report.empty()) {
    std::string msg = "invalid statistic:";
    for (const auto& r : report) msg += " " + r + ";";
    throw ValidationError(msg);
  }
  return s;
}

SuffStat load_suffstat(const std::string& path) { return parse_suffstat(read_file(path)); }

std::string suffstat_to_json(const SuffStat& s) {
  const std::size_t n = s.num_states;
  json j;
  j["num_states"] = n;
  j["num_paths"] = s.num_paths;
  j["start_counts"] = s.start_counts;
  j["transition_counts"] = rows(s.transition_counts, n);
  j["visit_counts"] = s.visit_counts;
  j["reward_sums"] = rows(s.reward_sums, n);
  json ev = json::array();
  for (const auto& [edge, c] : s.reward_events)
    ev.push_back({{"from", edge.first}, {"to", edge.second}, {"counts", c}});
  j["reward_events"] = std::move(ev);
  return j.dump(2) + "\n";
}

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace mrplab
