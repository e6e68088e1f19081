#include "collabscope/annotate/model_json.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace collabscope::annotate {
namespace {

std::string strip_fences(std::string_view text) {
  const auto open = text.find("```");
  if (open == std::string_view::npos) return std::string(text);
  const auto body = text.find('\n', open);
  if (body == std::string_view::npos) return std::string(text);
  const auto close = text.find("```", body);
  return std::string(text.substr(body + 1, close == std::string_view::npos ? std::string_view::npos : close - body - 1));
}

std::string drop_trailing_commas(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      out.push_back(c);
      if (c == '\\' && i + 1 < s.size()) {
        out.push_back(s[++i]);
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == ',') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '}' || s[j] == ']')) continue;
    }
    out.push_back(c);
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

nlohmann::json parse_model_json(std::string_view text) {
  std::string body = strip_fences(text);
  const auto first = body.find_first_of("{[");
  const auto last = body.find_last_of("}]");
  if (first == std::string::npos || last == std::string::npos || last < first) {
    throw MalformedOutput("reply contains no JSON object");
  }
  body = drop_trailing_commas(body.substr(first, last - first + 1));
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (!doc.is_discarded()) return doc;
  doc = nlohmann::json::parse("[" + body + "]", nullptr, false);
  if (!doc.is_discarded()) return doc;
  throw MalformedOutput("reply JSON does not parse");
}

std::optional<double> parse_percentage(const nlohmann::json& value) {
  double v = 0.0;
  if (value.is_number()) {
    v = value.get<double>();
  } else if (value.is_string()) {
    std::string s = value.get<std::string>();
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '%' || std::isspace(static_cast<unsigned char>(c)); }),
            s.end());
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (!(v >= 0.0 && v <= 100.0)) return std::nullopt;
  return v;
}

const nlohmann::json* find_field(const nlohmann::json& obj, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) return nullptr;
  for (auto key : keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (iequals(it.key(), key)) return &it.value();
    }
  }
  return nullptr;
}

std::optional<std::string> string_field(const nlohmann::json& obj, std::initializer_list<std::string_view> keys) {
  const auto* v = find_field(obj, keys);
  if (v == nullptr || !v->is_string()) return std::nullopt;
  return v->get<std::string>();
}

}  // namespace collabscope::annotate
