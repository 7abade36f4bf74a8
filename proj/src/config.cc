// Copyright 2026 The Jump-MPPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jump_mppi/config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace jump_mppi {
namespace {

struct Value {
  enum class Kind { kNumber, kString, kBool, kList };
  Kind kind = Kind::kString;
  double number = 0.0;
  std::string text;  // raw token for numbers, contents for strings
  bool flag = false;
  std::vector<Value> items;
};

class ValueParser {
 public:
  ValueParser(const std::string& text, int line) : s_(text), line_(line) {}

  Value ParseAll() {
    Value v = Parse();
    SkipSpace();
    if (pos_ != s_.size()) Fail("unexpected trailing characters");
    return v;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw ConfigError("parse error at line " + std::to_string(line_) + ": " +
                      what);
  }

  void SkipSpace() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  Value Parse() {
    SkipSpace();
    if (pos_ >= s_.size()) Fail("missing value");
    char ch = s_[pos_];
    if (ch == '[' || ch == '(') return ParseList(ch == '[' ? ']' : ')');
    if (ch == '"' || ch == '\'') return ParseQuoted(ch);
    return ParseBare();
  }

  Value ParseList(char close) {
    Value v;
    v.kind = Value::Kind::kList;
    ++pos_;
    SkipSpace();
    if (pos_ < s_.size() && s_[pos_] == close) {
      ++pos_;
      return v;
    }
    while (true) {
      v.items.push_back(Parse());
      SkipSpace();
      if (pos_ >= s_.size()) Fail("unterminated list");
      if (s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (s_[pos_] == close) {
        ++pos_;
        return v;
      }
      Fail(std::string("unexpected '") + s_[pos_] + "' in list");
    }
  }

  Value ParseQuoted(char quote) {
    Value v;
    v.kind = Value::Kind::kString;
    ++pos_;
    std::size_t end = s_.find(quote, pos_);
    if (end == std::string::npos) Fail("unterminated string");
    v.text = s_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return v;
  }

  Value ParseBare() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' &&
           s_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
    Value v;
    v.text = s_.substr(start, pos_ - start);
    if (v.text.empty()) Fail("missing value");
    if (v.text == "true" || v.text == "false") {
      v.kind = Value::Kind::kBool;
      v.flag = v.text == "true";
      return v;
    }
    double number = 0.0;
    auto [ptr, ec] =
        std::from_chars(v.text.data(), v.text.data() + v.text.size(), number);
    if (ec == std::errc() && ptr == v.text.data() + v.text.size()) {
      v.kind = Value::Kind::kNumber;
      v.number = number;
    } else {
      v.kind = Value::Kind::kString;
    }
    return v;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

[[noreturn]] void BadValue(const std::string& key, const std::string& what) {
  throw ConfigError("invalid value for key '" + key + "': " + what);
}

double AsDouble(const std::string& key, const Value& v) {
  if (v.kind != Value::Kind::kNumber || !std::isfinite(v.number)) {
    BadValue(key, "expected a finite number");
  }
  return v.number;
}

int AsInt(const std::string& key, const Value& v) {
  double d = AsDouble(key, v);
  if (d != std::floor(d) || std::abs(d) > 2e9) BadValue(key, "expected an integer");
  return static_cast<int>(d);
}

std::uint64_t AsSeed(const std::string& key, const Value& v) {
  if (v.kind != Value::Kind::kNumber) BadValue(key, "expected an integer");
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
  if (ec != std::errc() || ptr != v.text.data() + v.text.size()) {
    BadValue(key, "expected a nonnegative integer");
  }
  return out;
}

bool AsBool(const std::string& key, const Value& v) {
  if (v.kind != Value::Kind::kBool) BadValue(key, "expected true or false");
  return v.flag;
}

std::string AsString(const std::string& key, const Value& v) {
  if (v.kind != Value::Kind::kString) BadValue(key, "expected a string");
  return v.text;
}

std::vector<double> AsDoubleList(const std::string& key, const Value& v) {
  if (v.kind == Value::Kind::kNumber) return {AsDouble(key, v)};
  if (v.kind != Value::Kind::kList) BadValue(key, "expected a list of numbers");
  std::vector<double> out;
  for (const auto& item : v.items) out.push_back(AsDouble(key, item));
  return out;
}

std::vector<int> AsIntList(const std::string& key, const Value& v) {
  if (v.kind == Value::Kind::kNumber) return {AsInt(key, v)};
  if (v.kind != Value::Kind::kList) BadValue(key, "expected a list of integers");
  std::vector<int> out;
  for (const auto& item : v.items) out.push_back(AsInt(key, item));
  return out;
}

// Scalar -> 1x1 (expanded later), flat list -> diagonal, nested -> full.
Matrix AsCovariance(const std::string& key, const Value& v) {
  if (v.kind == Value::Kind::kNumber) {
    return Matrix::Constant(1, 1, AsDouble(key, v));
  }
  if (v.kind != Value::Kind::kList || v.items.empty()) {
    BadValue(key, "expected a number or a non-empty list");
  }
  const int n = static_cast<int>(v.items.size());
  if (v.items.front().kind != Value::Kind::kList) {
    Vector diag(n);
    for (int i = 0; i < n; ++i) diag(i) = AsDouble(key, v.items[i]);
    return diag.asDiagonal();
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row = AsDoubleList(key, v.items[i]);
    if (static_cast<int>(row.size()) != n) BadValue(key, "matrix must be square");
    for (int j = 0; j < n; ++j) out(i, j) = row[j];
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&,
                                  const Value&)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> setters = [] {
    std::map<std::string, Setter> s;
    auto dbl = [](std::optional<double> ExperimentConfig::*field) {
      return [field](ExperimentConfig& c, const std::string& k, const Value& v) {
        c.*field = AsDouble(k, v);
      };
    };
    auto list = [](std::optional<std::vector<double>> ExperimentConfig::*field) {
      return [field](ExperimentConfig& c, const std::string& k, const Value& v) {
        c.*field = AsDoubleList(k, v);
      };
    };
    s["task"] = [](ExperimentConfig& c, const std::string& k, const Value& v) {
      c.task = AsString(k, v);
    };
    s["cart_mass"] = dbl(&ExperimentConfig::cart_mass);
    s["pole_mass"] = dbl(&ExperimentConfig::pole_mass);
    s["pole_length"] = dbl(&ExperimentConfig::pole_length);
    s["mass"] = dbl(&ExperimentConfig::mass);
    s["arm_length"] = dbl(&ExperimentConfig::arm_length);
    s["gravity"] = dbl(&ExperimentConfig::gravity);
    s["inertia"] = list(&ExperimentConfig::inertia);
    s["cost_weights"] = list(&ExperimentConfig::cost_weights);
    s["terminal_scale"] = dbl(&ExperimentConfig::terminal_scale);
    s["initial_state"] = list(&ExperimentConfig::initial_state);
    s["initial_position"] = list(&ExperimentConfig::initial_position);
    s["target"] = list(&ExperimentConfig::target);
    s["duration"] = dbl(&ExperimentConfig::duration);
    s["plant_noise"] = [](ExperimentConfig& c, const std::string& k,
                          const Value& v) { c.plant_noise = AsBool(k, v); };
    s["success_angle_band"] = dbl(&ExperimentConfig::success_angle_band);
    s["success_cart_bound"] = dbl(&ExperimentConfig::success_cart_bound);
    s["success_settle_time"] = dbl(&ExperimentConfig::success_settle_time);
    s["success_goal_radius"] = dbl(&ExperimentConfig::success_goal_radius);
    s["success_max_tilt_deg"] = dbl(&ExperimentConfig::success_max_tilt_deg);
    s["lambda"] = dbl(&ExperimentConfig::lambda);
    s["c"] = dbl(&ExperimentConfig::c);
    s["dt"] = dbl(&ExperimentConfig::dt);
    s["horizon_n"] = [](ExperimentConfig& c, const std::string& k,
                        const Value& v) { c.horizon_n = AsInt(k, v); };
    s["sigma_d"] = [](ExperimentConfig& c, const std::string& k,
                      const Value& v) { c.sigma_d = AsCovariance(k, v); };
    s["sigma_j_shape"] = [](ExperimentConfig& c, const std::string& k,
                            const Value& v) {
      c.sigma_j_shape = AsCovariance(k, v);
    };
    s["u_init"] = list(&ExperimentConfig::u_init);
    s["control_min"] = list(&ExperimentConfig::control_min);
    s["control_max"] = list(&ExperimentConfig::control_max);
    s["nu"] = [](ExperimentConfig& c, const std::string& k, const Value& v) {
      c.nu = AsDoubleList(k, v);
    };
    s["sigma_j"] = [](ExperimentConfig& c, const std::string& k,
                      const Value& v) { c.sigma_j = AsDoubleList(k, v); };
    s["cells"] = [](ExperimentConfig& c, const std::string& k, const Value& v) {
      if (v.kind != Value::Kind::kList) BadValue(k, "expected a list of pairs");
      c.cells.clear();
      for (const auto& item : v.items) {
        std::vector<double> pair = AsDoubleList(k, item);
        if (pair.size() != 2 || item.kind != Value::Kind::kList) {
          BadValue(k, "each cell must be [nu, sigma_j]");
        }
        c.cells.emplace_back(pair[0], pair[1]);
      }
    };
    s["samples_m"] = [](ExperimentConfig& c, const std::string& k,
                        const Value& v) { c.samples_m = AsIntList(k, v); };
    s["trials"] = [](ExperimentConfig& c, const std::string& k,
                     const Value& v) { c.trials = AsInt(k, v); };
    s["seed"] = [](ExperimentConfig& c, const std::string& k, const Value& v) {
      c.seed = AsSeed(k, v);
    };
    s["output_dir"] = [](ExperimentConfig& c, const std::string& k,
                         const Value& v) { c.output_dir = AsString(k, v); };
    s["variant"] = [](ExperimentConfig& c, const std::string& k,
                      const Value& v) { c.variant = AsString(k, v); };
    s["record_timing"] = [](ExperimentConfig& c, const std::string& k,
                            const Value& v) { c.record_timing = AsBool(k, v); };
    s["bench_iterations"] = [](ExperimentConfig& c, const std::string& k,
                               const Value& v) {
      c.bench_iterations = AsInt(k, v);
    };
    return s;
  }();
  return setters;
}

int BracketDepth(const std::string& text) {
  int depth = 0;
  char quote = 0;
  for (char ch : text) {
    if (quote) {
      if (ch == quote) quote = 0;
      continue;
    }
    if (ch == '"' || ch == '\'') quote = ch;
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
  }
  return depth;
}

std::string StripComment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quote) {
      if (ch == quote) quote = 0;
      continue;
    }
    if (ch == '"' || ch == '\'') quote = ch;
    if (ch == '#') return line.substr(0, i);
  }
  return line;
}

std::string Trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Matrix ExpandCovariance(const Matrix& cov, int m, const std::string& key) {
  if (cov.rows() == 1 && cov.cols() == 1 && m > 1) {
    return cov(0, 0) * Matrix::Identity(m, m);
  }
  if (cov.rows() != m || cov.cols() != m) {
    throw ConfigError(key + " must be a scalar or have " + std::to_string(m) +
                      " entries");
  }
  return cov;
}

}  // namespace

ControllerDefaults DefaultsFor(TaskKind kind) {
  ControllerDefaults d;
  d.lambda = 0.02;
  d.c = 2.0;
  d.dt = 0.02;
  if (kind == TaskKind::kCartpole) {
    d.horizon_n = 35;
    d.sigma_d = Matrix::Constant(1, 1, 0.05);
    d.sigma_j_shape = Matrix::Constant(1, 1, 9.0);
  } else {
    // Thrust [N] and body torques [N m] need very different scales.
    d.horizon_n = 50;
    d.sigma_d = Eigen::Vector4d(0.1, 2e-5, 2e-5, 2e-5).asDiagonal();
    d.sigma_j_shape = Eigen::Vector4d(0.4, 0.0015, 0.0015, 0.0015).asDiagonal();
  }
  return d;
}

ExperimentConfig ParseConfig(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const int start_line = line_no;
    std::string line = StripComment(raw);
    while (BracketDepth(line) > 0 && std::getline(in, raw)) {
      ++line_no;
      line += " " + StripComment(raw);
    }
    line = Trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("parse error at line " + std::to_string(start_line) +
                        ": expected 'key = value'");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value_text = Trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("parse error at line " + std::to_string(start_line) +
                        ": missing key");
    }
    auto it = Setters().find(key);
    if (it == Setters().end()) {
      throw ConfigError("unknown key '" + key + "' at line " +
                        std::to_string(start_line));
    }
    if (seen.count(key)) {
      throw ConfigError("duplicate key '" + key + "' at line " +
                        std::to_string(start_line));
    }
    seen[key] = start_line;
    Value value = ValueParser(value_text, start_line).ParseAll();
    it->second(config, key, value);
  }
  CheckExperimentConfig(config);
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

TaskKind ParseTaskKind(const std::string& name) {
  if (name == "cartpole") return TaskKind::kCartpole;
  if (name == "quadrotor") return TaskKind::kQuadrotor;
  throw ConfigError("unknown task '" + name + "'");
}

void CheckExperimentConfig(const ExperimentConfig& config) {
  ParseTaskKind(config.task);
  if (config.cells.empty() && (config.nu.empty() || config.sigma_j.empty())) {
    throw ConfigError("sweep lists must be non-empty");
  }
  if (config.samples_m.empty()) throw ConfigError("samples_m must be non-empty");
  for (int m : config.samples_m) {
    if (m < 1) throw ConfigError("samples_m entries must be positive");
  }
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.variant != "old" && config.variant != "new" &&
      config.variant != "both") {
    throw ConfigError("variant must be old, new or both");
  }
  if (config.bench_iterations < 1) {
    throw ConfigError("bench_iterations must be >= 1");
  }
}

TaskSpec BuildTask(const ExperimentConfig& config) {
  TaskKind kind = ParseTaskKind(config.task);
  TaskSpec task;
  if (kind == TaskKind::kCartpole) {
    CartpoleTaskOptions options;
    if (config.cart_mass) options.params.cart_mass = *config.cart_mass;
    if (config.pole_mass) options.params.pole_mass = *config.pole_mass;
    if (config.pole_length) options.params.pole_length = *config.pole_length;
    if (config.gravity) options.params.gravity = *config.gravity;
    if (config.cost_weights) options.weights = *config.cost_weights;
    if (config.terminal_scale) options.terminal_scale = *config.terminal_scale;
    if (config.initial_state) {
      options.initial_state = Eigen::Map<const Vector>(
          config.initial_state->data(),
          static_cast<int>(config.initial_state->size()));
    }
    if (config.duration) options.duration = *config.duration;
    task = MakeCartpoleTask(options);
  } else {
    QuadrotorTaskOptions options;
    if (config.mass) options.params.mass = *config.mass;
    if (config.arm_length) options.params.arm_length = *config.arm_length;
    if (config.gravity) options.params.gravity = *config.gravity;
    if (config.inertia) {
      if (config.inertia->size() != 3) {
        throw ConfigError("inertia must have 3 entries");
      }
      options.params.inertia = Eigen::Vector3d(
          (*config.inertia)[0], (*config.inertia)[1], (*config.inertia)[2]);
    }
    if (config.cost_weights) options.weights = *config.cost_weights;
    if (config.terminal_scale) options.terminal_scale = *config.terminal_scale;
    auto to_vec = [](const std::vector<double>& v) {
      return Vector(Eigen::Map<const Vector>(v.data(), static_cast<int>(v.size())));
    };
    if (config.target) options.target = to_vec(*config.target);
    if (config.initial_position) {
      options.initial_position = to_vec(*config.initial_position);
    }
    if (config.duration) options.duration = *config.duration;
    task = MakeQuadrotorTask(options);
  }
  task.plant_noise = config.plant_noise;
  SuccessCriteria& rule = task.success;
  if (config.success_angle_band) rule.angle_band = *config.success_angle_band;
  if (config.success_cart_bound) rule.cart_bound = *config.success_cart_bound;
  if (config.success_settle_time) rule.settle_time = *config.success_settle_time;
  if (config.success_goal_radius) rule.goal_radius = *config.success_goal_radius;
  if (config.success_max_tilt_deg) {
    rule.max_tilt = *config.success_max_tilt_deg * std::numbers::pi / 180.0;
  }
  const int m = task.model->control_dim();
  if (config.u_init) {
    if (static_cast<int>(config.u_init->size()) != m) {
      throw ConfigError("u_init must have " + std::to_string(m) + " entries");
    }
    task.u_init = Eigen::Map<const Vector>(config.u_init->data(), m);
  }
  if (config.control_min || config.control_max) {
    ControlLimits limits;
    limits.lower = Vector::Constant(m, -std::numeric_limits<double>::infinity());
    limits.upper = Vector::Constant(m, std::numeric_limits<double>::infinity());
    if (config.control_min) {
      if (static_cast<int>(config.control_min->size()) != m) {
        throw ConfigError("control_min must have " + std::to_string(m) + " entries");
      }
      limits.lower = Eigen::Map<const Vector>(config.control_min->data(), m);
    }
    if (config.control_max) {
      if (static_cast<int>(config.control_max->size()) != m) {
        throw ConfigError("control_max must have " + std::to_string(m) + " entries");
      }
      limits.upper = Eigen::Map<const Vector>(config.control_max->data(), m);
    }
    // The task owns its model, so limits are set on a private copy.
    if (kind == TaskKind::kCartpole) {
      auto model = std::make_shared<CartpoleModel>(
          static_cast<const CartpoleModel&>(*task.model));
      model->set_control_limits(limits);
      task.model = model;
    } else {
      auto model = std::make_shared<QuadrotorModel>(
          static_cast<const QuadrotorModel&>(*task.model));
      model->set_control_limits(limits);
      task.model = model;
    }
  }
  return task;
}

std::vector<SweepCell> SweepCells(const ExperimentConfig& config) {
  std::vector<std::pair<double, double>> pairs = config.cells;
  if (pairs.empty()) {
    for (double nu : config.nu) {
      for (double sj : config.sigma_j) pairs.emplace_back(nu, sj);
    }
  }
  std::vector<SweepCell> cells;
  for (const auto& [nu, sj] : pairs) {
    for (int m : config.samples_m) cells.push_back({nu, sj, m});
  }
  return cells;
}

MppiConfig BuildMppiConfig(const ExperimentConfig& config,
                           const TaskSpec& task, const SweepCell& cell,
                           bool jump_sampling) {
  ControllerDefaults d = DefaultsFor(task.kind);
  const int m = task.model->control_dim();
  MppiConfig out;
  out.lambda = config.lambda.value_or(d.lambda);
  out.c = config.c.value_or(d.c);
  out.dt = config.dt.value_or(d.dt);
  out.horizon_n = config.horizon_n.value_or(d.horizon_n);
  out.samples_m = cell.samples_m;
  out.nu = cell.nu;
  out.sigma_d = ExpandCovariance(config.sigma_d.value_or(d.sigma_d), m, "sigma_d");
  out.sigma_j = cell.sigma_j * ExpandCovariance(
                                   config.sigma_j_shape.value_or(d.sigma_j_shape),
                                   m, "sigma_j_shape");
  out.u_init = task.u_init;
  out.jump_sampling_enabled = jump_sampling;
  return ValidateConfig(out);
}

std::vector<std::string> SelectedVariants(const ExperimentConfig& config) {
  if (config.variant == "old") return {"old"};
  if (config.variant == "new") return {"new"};
  return {"old", "new"};
}

}  // namespace jump_mppi
