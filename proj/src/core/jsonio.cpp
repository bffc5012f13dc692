#include "core/jsonio.hpp"

#include "core/complexio.hpp"
#include "core/error.hpp"

namespace merodiff {

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void dump_value(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  const std::string pad2(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out += pad2;
        out += Json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), indent + 2, out);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j)
        if (!is_scalar(v)) flat = false;
      if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_value(j[i], indent, out);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad2;
        dump_value(j[i], indent + 2, out);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_value(j, 0, out);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace merodiff
