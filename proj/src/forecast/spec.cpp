#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "json.hpp"
#include "noiseplane/error.hpp"
#include "noiseplane/forecast.hpp"

namespace noiseplane {

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string normalize_name(std::string_view text) {
  std::string out;
  for (char ch : text) {
    if (ch == '_' || ch == '-' || ch == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::string_view context) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument,
                "bad number '" + std::string(text) + "' in " + std::string(context));
  }
  return v;
}

int parse_integer(std::string_view text, std::string_view context) {
  const double v = parse_number(text, context);
  if (v != std::floor(v)) {
    throw Error(ErrorCode::InvalidArgument,
                "expected an integer, got '" + std::string(text) + "' in " + std::string(context));
  }
  return static_cast<int>(v);
}

struct Arguments {
  std::vector<std::string> positional;
  std::map<std::string, std::string> named;
};

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      parts.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(text.substr(start)));
  return parts;
}

Arguments parse_arguments(std::string_view inner) {
  Arguments args;
  if (trim(inner).empty()) return args;
  for (auto part : split_top_level(inner)) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      args.positional.emplace_back(part);
    } else {
      args.named[normalize_name(part.substr(0, eq))] = std::string(trim(part.substr(eq + 1)));
    }
  }
  return args;
}

// Positional slot `index` or named `key`, whichever is present.
std::optional<std::string> argument(const Arguments& args, std::size_t index,
                                    const std::string& key) {
  if (auto it = args.named.find(key); it != args.named.end()) return it->second;
  if (index < args.positional.size()) return args.positional[index];
  return std::nullopt;
}

void reject_extra(const Arguments& args, std::size_t max_positional,
                  std::initializer_list<const char*> keys, std::string_view model) {
  if (args.positional.size() > max_positional) {
    throw Error(ErrorCode::InvalidArgument, "too many arguments for " + std::string(model));
  }
  for (const auto& [k, v] : args.named) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; })) {
      throw Error(ErrorCode::InvalidArgument,
                  "unknown parameter '" + k + "' for " + std::string(model));
    }
  }
}

std::string_view kind_key(ForecasterKind kind) {
  switch (kind) {
    case ForecasterKind::NaiveDrift: return "naive_drift";
    case ForecasterKind::NaiveSeasonal: return "naive_seasonal";
    case ForecasterKind::Ses: return "ses";
    case ForecasterKind::Holt: return "holt";
    case ForecasterKind::Arima: return "arima";
    case ForecasterKind::AutoArima: return "auto_arima";
    case ForecasterKind::LaggedRidge: return "lagged_ridge";
  }
  return "naive_seasonal";
}

ForecasterKind kind_from_key(std::string_view key) {
  const std::string k = normalize_name(key);
  if (k == "naivedrift") return ForecasterKind::NaiveDrift;
  if (k == "naiveseasonal" || k == "naive") return ForecasterKind::NaiveSeasonal;
  if (k == "ses") return ForecasterKind::Ses;
  if (k == "holt") return ForecasterKind::Holt;
  if (k == "arima") return ForecasterKind::Arima;
  if (k == "autoarima") return ForecasterKind::AutoArima;
  if (k == "laggedridge" || k == "ridge") return ForecasterKind::LaggedRidge;
  throw Error(ErrorCode::InvalidArgument, "unknown model '" + std::string(key) + "'");
}

}  // namespace

void ForecasterSpec::validate() const {
  auto in_unit = [](const std::optional<double>& v) { return !v || (*v >= 0.0 && *v <= 1.0); };
  switch (kind) {
    case ForecasterKind::NaiveSeasonal:
      if (season < 1) throw Error(ErrorCode::InvalidArgument, "season K must be >= 1");
      break;
    case ForecasterKind::Ses:
    case ForecasterKind::Holt:
      if (!in_unit(alpha) || !in_unit(beta)) {
        throw Error(ErrorCode::InvalidArgument, "smoothing coefficients must lie in [0, 1]");
      }
      break;
    case ForecasterKind::Arima:
      if (order.p < 0 || order.p > 5 || order.q < 0 || order.q > 5 || order.d < 0 ||
          order.d > 2) {
        throw Error(ErrorCode::InvalidArgument, "ARIMA order out of range");
      }
      break;
    case ForecasterKind::LaggedRidge:
      if (lags < 1) throw Error(ErrorCode::InvalidArgument, "lags must be >= 1");
      if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
      break;
    case ForecasterKind::NaiveDrift:
    case ForecasterKind::AutoArima:
      break;
  }
}

std::size_t ForecasterSpec::min_train_length() const {
  switch (kind) {
    case ForecasterKind::NaiveDrift: return 2;
    case ForecasterKind::NaiveSeasonal: return static_cast<std::size_t>(std::max(2, season));
    case ForecasterKind::Ses: return 2;
    case ForecasterKind::Holt: return 3;
    case ForecasterKind::Arima: return static_cast<std::size_t>(order.p + order.d + order.q + 2);
    case ForecasterKind::AutoArima: return 4;
    case ForecasterKind::LaggedRidge: return static_cast<std::size_t>(lags) + 2;
  }
  return 2;
}

std::string ForecasterSpec::name() const {
  switch (kind) {
    case ForecasterKind::NaiveDrift:
      return "NaiveDrift";
    case ForecasterKind::NaiveSeasonal:
      return season == 1 ? "NaiveSeasonal" : "NaiveSeasonal(K=" + std::to_string(season) + ")";
    case ForecasterKind::Ses:
      return alpha ? "SES(alpha=" + format_number(*alpha) + ")" : "SES";
    case ForecasterKind::Holt: {
      std::string args;
      if (alpha) args += "alpha=" + format_number(*alpha);
      if (beta) args += std::string(args.empty() ? "" : ",") + "beta=" + format_number(*beta);
      return args.empty() ? "Holt" : "Holt(" + args + ")";
    }
    case ForecasterKind::Arima:
      return "ARIMA(" + std::to_string(order.p) + "," + std::to_string(order.d) + "," +
             std::to_string(order.q) + ")";
    case ForecasterKind::AutoArima:
      return "AutoARIMA";
    case ForecasterKind::LaggedRidge:
      return "LaggedRidge(lags=" + std::to_string(lags) + ",lambda=" + format_number(lambda) + ")";
  }
  return "NaiveSeasonal";
}

ForecasterSpec ForecasterSpec::parse(std::string_view text) {
  text = trim(text);
  std::string_view head = text;
  std::string_view inner;
  if (const auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') {
      throw Error(ErrorCode::InvalidArgument, "unbalanced parentheses in '" + std::string(text) + "'");
    }
    head = text.substr(0, open);
    inner = text.substr(open + 1, text.size() - open - 2);
  }
  ForecasterSpec spec;
  spec.kind = kind_from_key(trim(head));
  const Arguments args = parse_arguments(inner);
  const std::string ctx(text);
  switch (spec.kind) {
    case ForecasterKind::NaiveDrift:
    case ForecasterKind::AutoArima:
      reject_extra(args, 0, {}, ctx);
      break;
    case ForecasterKind::NaiveSeasonal:
      reject_extra(args, 1, {"k", "season"}, ctx);
      if (auto v = argument(args, 0, "k")) spec.season = parse_integer(*v, ctx);
      if (auto v = args.named.find("season"); v != args.named.end()) {
        spec.season = parse_integer(v->second, ctx);
      }
      break;
    case ForecasterKind::Ses:
      reject_extra(args, 1, {"alpha"}, ctx);
      if (auto v = argument(args, 0, "alpha")) spec.alpha = parse_number(*v, ctx);
      break;
    case ForecasterKind::Holt:
      reject_extra(args, 2, {"alpha", "beta"}, ctx);
      if (auto v = argument(args, 0, "alpha")) spec.alpha = parse_number(*v, ctx);
      if (auto v = argument(args, 1, "beta")) spec.beta = parse_number(*v, ctx);
      break;
    case ForecasterKind::Arima: {
      reject_extra(args, 3, {"p", "d", "q"}, ctx);
      auto p = argument(args, 0, "p");
      auto d = argument(args, 1, "d");
      auto q = argument(args, 2, "q");
      if (!p || !d || !q) {
        throw Error(ErrorCode::InvalidArgument, "ARIMA needs (p,d,q): '" + ctx + "'");
      }
      spec.order = {parse_integer(*p, ctx), parse_integer(*d, ctx), parse_integer(*q, ctx)};
      break;
    }
    case ForecasterKind::LaggedRidge:
      reject_extra(args, 2, {"lags", "lambda"}, ctx);
      if (auto v = argument(args, 0, "lags")) spec.lags = parse_integer(*v, ctx);
      if (auto v = argument(args, 1, "lambda")) spec.lambda = parse_number(*v, ctx);
      break;
  }
  spec.validate();
  return spec;
}

std::vector<ForecasterSpec> parse_model_list(std::string_view text) {
  std::vector<ForecasterSpec> out;
  for (auto part : split_top_level(text)) {
    if (part.empty()) continue;
    out.push_back(ForecasterSpec::parse(part));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty model list");
  return out;
}

std::string ForecasterSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_key(kind);
  switch (kind) {
    case ForecasterKind::NaiveSeasonal: j["K"] = season; break;
    case ForecasterKind::Ses:
      if (alpha) j["alpha"] = *alpha;
      break;
    case ForecasterKind::Holt:
      if (alpha) j["alpha"] = *alpha;
      if (beta) j["beta"] = *beta;
      break;
    case ForecasterKind::Arima: j["order"] = {order.p, order.d, order.q}; break;
    case ForecasterKind::LaggedRidge:
      j["lags"] = lags;
      j["lambda"] = lambda;
      break;
    case ForecasterKind::NaiveDrift:
    case ForecasterKind::AutoArima:
      break;
  }
  return j.dump();
}

ForecasterSpec ForecasterSpec::from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  ForecasterSpec spec;
  spec.kind = kind_from_key(j.at("kind").get<std::string>());
  if (j.contains("K")) spec.season = j["K"].get<int>();
  if (j.contains("alpha")) spec.alpha = j["alpha"].get<double>();
  if (j.contains("beta")) spec.beta = j["beta"].get<double>();
  if (j.contains("order")) {
    const auto o = j["order"].get<std::vector<int>>();
    if (o.size() != 3) throw Error(ErrorCode::InvalidArgument, "order must be [p, d, q]");
    spec.order = {o[0], o[1], o[2]};
  }
  if (j.contains("lags")) spec.lags = j["lags"].get<int>();
  if (j.contains("lambda")) spec.lambda = j["lambda"].get<double>();
  spec.validate();
  return spec;
}

Forecast fit_predict(const ForecasterSpec& spec, std::span<const double> train, int horizon) {
  spec.validate();
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (train.size() < spec.min_train_length()) {
    throw Error(ErrorCode::InsufficientData,
                spec.name() + " needs at least " + std::to_string(spec.min_train_length()) +
                    " training points, got " + std::to_string(train.size()));
  }
  Forecast out;
  out.origin = train.size() - 1;
  switch (spec.kind) {
    case ForecasterKind::NaiveDrift:
      out.values = naive_drift_forecast(train, horizon);
      break;
    case ForecasterKind::NaiveSeasonal:
      out.values = naive_seasonal_forecast(train, spec.season, horizon);
      break;
    case ForecasterKind::Ses:
      out.values = fit_ses(train, spec.alpha).forecast(horizon);
      break;
    case ForecasterKind::Holt:
      out.values = fit_holt(train, spec.alpha, spec.beta).forecast(horizon);
      break;
    case ForecasterKind::Arima:
      out.values = fit_arima(train, spec.order).forecast(horizon);
      break;
    case ForecasterKind::AutoArima:
      out.values = auto_arima(train).forecast(horizon);
      break;
    case ForecasterKind::LaggedRidge:
      out.values = fit_lagged_ridge(train, spec.lags, spec.lambda).forecast(horizon);
      break;
  }
  for (double v : out.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::SingularFit, spec.name() + " forecast is not finite");
  }
  return out;
}

Forecast fit_predict(const ForecasterSpec& spec, const TimeSeries& train, int horizon) {
  return fit_predict(spec, train.values(), horizon);
}

}  // namespace noiseplane
