#include "sharesig/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace sharesig {

namespace {

struct Value {
  enum class Type { Number, Bool, String, Array, Table } type;
  double number = 0.0;
  bool boolean = false;
  std::string text;
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> fields;
};

// Recursive-descent reader for one value on a single line.
class ValueReader {
 public:
  ValueReader(std::string_view s, int line, std::string key)
      : s_(s), line_(line), key_(std::move(key)) {}

  Value read_all() {
    Value v = read();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line_) + ": key '" + key_ +
                          "': " + why,
                      line_, key_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string read_bare_key() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a key inside inline table");
    return std::string(s_.substr(start, pos_ - start));
  }

  Value read() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    Value v{};
    if (c == '"') {
      ++pos_;
      const std::size_t end = s_.find('"', pos_);
      if (end == std::string_view::npos) fail("unterminated string");
      v.type = Value::Type::String;
      v.text = std::string(s_.substr(pos_, end - pos_));
      pos_ = end + 1;
      return v;
    }
    if (c == '[') {
      ++pos_;
      v.type = Value::Type::Array;
      if (eat(']')) return v;
      do {
        v.items.push_back(read());
      } while (eat(','));
      if (!eat(']')) fail("expected ']'");
      return v;
    }
    if (c == '{') {
      ++pos_;
      v.type = Value::Type::Table;
      if (eat('}')) return v;
      do {
        std::string k = read_bare_key();
        if (!eat('=')) fail("expected '=' after '" + k + "'");
        v.fields.emplace_back(std::move(k), read());
      } while (eat(','));
      if (!eat('}')) fail("expected '}'");
      return v;
    }
    if (s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      v.type = Value::Type::Bool;
      v.boolean = true;
      return v;
    }
    if (s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      v.type = Value::Type::Bool;
      return v;
    }
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (*first == '+') ++first;
    double x = 0.0;
    const auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr == first) fail("cannot parse value");
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    v.type = Value::Type::Number;
    v.number = x;
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  std::string key_;
};

struct Context {
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': " + why,
                      line, key);
  }
  double number(const Value& v) const {
    if (v.type != Value::Type::Number) fail("expected a number");
    return v.number;
  }
  std::string string(const Value& v) const {
    if (v.type != Value::Type::String) fail("expected a string");
    return v.text;
  }
  bool boolean(const Value& v) const {
    if (v.type != Value::Type::Bool) fail("expected true or false");
    return v.boolean;
  }
  std::vector<double> numbers(const Value& v) const {
    if (v.type != Value::Type::Array) fail("expected an array of numbers");
    std::vector<double> out;
    for (const Value& item : v.items) out.push_back(number(item));
    return out;
  }
  std::uint64_t count(const Value& v) const {
    const double x = number(v);
    if (!(x >= 1.0) || x != static_cast<double>(static_cast<std::uint64_t>(x))) {
      fail("expected a positive integer");
    }
    return static_cast<std::uint64_t>(x);
  }
};

std::string strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

DistributionSpec parse_distribution(const Context& ctx, const Value& v) {
  if (v.type != Value::Type::Table) ctx.fail("expected an inline table { kind = ... }");
  DistributionSpec d;
  bool have_kind = false;
  for (const auto& [k, fv] : v.fields) {
    const Context sub{ctx.line, ctx.key + "." + k};
    if (k == "kind") {
      d.kind = sub.string(fv);
      have_kind = true;
    } else if (k == "a") {
      d.a = sub.number(fv);
    } else if (k == "b") {
      d.b = sub.number(fv);
    } else if (k == "alpha") {
      d.alpha = sub.number(fv);
    } else if (k == "beta") {
      d.beta = sub.number(fv);
    } else if (k == "x") {
      if (fv.type == Value::Type::Array) {
        d.knots_x = sub.numbers(fv);
      } else {
        d.x = sub.number(fv);
      }
    } else if (k == "y") {
      d.knots_y = sub.numbers(fv);
    } else {
      sub.fail("unknown distribution field");
    }
  }
  if (!have_kind) ctx.fail("distribution needs a kind");
  static const std::set<std::string> kinds{"uniform", "beta", "piecewise", "point"};
  if (!kinds.count(d.kind)) ctx.fail("unknown distribution kind '" + d.kind + "'");
  return d;
}

SweepAxis parse_axis(const Context& ctx, const Value& v) {
  SweepAxis axis;
  axis.name = ctx.key;
  if (v.type == Value::Type::Array) {
    if (v.items.size() != 3) ctx.fail("sweep axis array must be [min, max, steps]");
    axis.min = ctx.number(v.items[0]);
    axis.max = ctx.number(v.items[1]);
    axis.steps = static_cast<int>(ctx.count(v.items[2]));
  } else if (v.type == Value::Type::Table) {
    bool have[3] = {false, false, false};
    for (const auto& [k, fv] : v.fields) {
      const Context sub{ctx.line, ctx.key + "." + k};
      if (k == "min") {
        axis.min = sub.number(fv);
        have[0] = true;
      } else if (k == "max") {
        axis.max = sub.number(fv);
        have[1] = true;
      } else if (k == "steps") {
        axis.steps = static_cast<int>(sub.count(fv));
        have[2] = true;
      } else {
        sub.fail("unknown sweep field");
      }
    }
    if (!(have[0] && have[1] && have[2])) ctx.fail("sweep axis needs min, max and steps");
  } else {
    ctx.fail("sweep axis must be { min = .., max = .., steps = .. }");
  }
  if (axis.steps < 2) ctx.fail("steps must be >= 2");
  return axis;
}

}  // namespace

Distribution DistributionSpec::make() const {
  if (kind == "uniform") return Distribution::uniform(a, b);
  if (kind == "beta") return Distribution::beta(alpha, beta);
  if (kind == "piecewise") return Distribution::piecewise_linear(knots_x, knots_y);
  return Distribution::point_mass(x);
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] = min + (max - min) * i / (steps - 1);
  }
  return out;
}

DistributionSpec ExperimentConfig::receiver_spec() const {
  if (F_R) return *F_R;
  DistributionSpec d;
  d.kind = "point";
  d.x = params.p_R;
  return d;
}

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names{
      "q", "beta", "eta", "p_T", "lambda_S", "lambda_R", "c_S", "p_S", "p_R"};
  return names;
}

double& param_ref(ModelParams& p, std::string_view name) {
  if (name == "q") return p.q;
  if (name == "beta") return p.beta;
  if (name == "eta") return p.eta;
  if (name == "p_T") return p.p_T;
  if (name == "lambda_S") return p.lambda_S;
  if (name == "lambda_R") return p.lambda_R;
  if (name == "c_S") return p.c_S;
  if (name == "p_S") return p.p_S;
  if (name == "p_R") return p.p_R;
  throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
}

double param_value(const ModelParams& p, std::string_view name) {
  return param_ref(const_cast<ModelParams&>(p), name);
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header",
                          line_no, line);
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "sweep" && section != "simulation") {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                              section + "]",
                          line_no, section);
      }
      if (section == "simulation") cfg.simulation.present = true;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value",
                        line_no, line);
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const Context ctx{line_no, key};
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (!seen.insert(qualified).second) ctx.fail("duplicate key");
    const Value v =
        ValueReader(std::string_view(line).substr(eq + 1), line_no, key).read_all();

    const auto& names = param_names();
    const bool is_param = std::find(names.begin(), names.end(), key) != names.end();
    if (section == "sweep") {
      if (!is_param) ctx.fail("unknown key: not a sweepable parameter");
      cfg.sweep.push_back(parse_axis(ctx, v));
    } else if (section == "simulation") {
      if (key == "n_draws") {
        cfg.simulation.n_draws = ctx.count(v);
      } else if (key == "seed") {
        const double s = ctx.number(v);
        if (!(s >= 0.0) || s != static_cast<double>(static_cast<std::uint64_t>(s))) {
          ctx.fail("seed must be a non-negative integer");
        }
        cfg.simulation.seed = static_cast<std::uint64_t>(s);
      } else if (key == "isa") {
        const std::string isa = ctx.string(v);
        if (isa == "auto") {
          cfg.simulation.isa = kernels::Isa::Auto;
        } else if (isa == "scalar") {
          cfg.simulation.isa = kernels::Isa::Scalar;
        } else if (isa == "avx2") {
          cfg.simulation.isa = kernels::Isa::Avx2;
        } else {
          ctx.fail("isa must be auto, scalar or avx2");
        }
      } else {
        ctx.fail("unknown key");
      }
    } else if (is_param) {
      param_ref(cfg.params, key) = ctx.number(v);
    } else if (key == "F_S") {
      cfg.F_S = parse_distribution(ctx, v);
    } else if (key == "F_R") {
      cfg.F_R = parse_distribution(ctx, v);
    } else if (key == "regime") {
      const std::string r = ctx.string(v);
      if (r == "ability") {
        cfg.regime = Regime::Ability;
      } else if (r == "worldview") {
        cfg.regime = Regime::Worldview;
      } else {
        ctx.fail("regime must be \"ability\" or \"worldview\"");
      }
    } else if (key == "override_regime") {
      cfg.override_regime = ctx.boolean(v);
    } else if (key == "tol") {
      const double t = ctx.number(v);
      if (!(t > 0.0)) ctx.fail("tol must be positive");
      cfg.tol = t;
    } else if (key == "output") {
      cfg.output = ctx.string(v);
    } else {
      ctx.fail("unknown key");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path.string(), 0, "");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace sharesig
