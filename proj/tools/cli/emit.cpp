#include "emit.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nudirac::cli {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  return fmt::format("{:.17g}", v);
}

void JsonWriter::newline() {
  os_ << '\n';
  for (std::size_t i = 0; i < stack_.size(); ++i) os_ << "  ";
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  Level& top = stack_.back();
  if (top.count > 0) os_ << (top.inline_items ? ", " : ",");
  if (!top.inline_items) newline();
  ++top.count;
}

JsonWriter& JsonWriter::begin_object(bool inline_items) {
  before_value();
  os_ << '{';
  stack_.push_back({true, inline_items, 0});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const Level top = stack_.back();
  stack_.pop_back();
  if (top.count > 0 && !top.inline_items) newline();
  os_ << '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array(bool inline_items) {
  before_value();
  os_ << '[';
  stack_.push_back({false, inline_items, 0});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const Level top = stack_.back();
  stack_.pop_back();
  if (top.count > 0 && !top.inline_items) newline();
  os_ << ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  Level& top = stack_.back();
  if (top.count > 0) os_ << (top.inline_items ? ", " : ",");
  if (!top.inline_items) newline();
  ++top.count;
  os_ << nlohmann::json(std::string(k)).dump() << ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  before_value();
  os_ << format_number(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }
JsonWriter& JsonWriter::value(long v) { return value(static_cast<long long>(v)); }
JsonWriter& JsonWriter::value(unsigned long v) { return value(static_cast<unsigned long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  before_value();
  os_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(unsigned long long v) {
  before_value();
  os_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  os_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  os_ << nlohmann::json(std::string(v)).dump();
  return *this;
}

JsonWriter& JsonWriter::value(const cplx& v) {
  begin_object(true);
  field("re", v.real());
  field("im", v.imag());
  return end_object();
}

JsonWriter& JsonWriter::value(const nlohmann::ordered_json& v) {
  switch (v.type()) {
    case nlohmann::json::value_t::object:
      begin_object();
      for (const auto& [k, item] : v.items()) {
        key(k);
        value(item);
      }
      return end_object();
    case nlohmann::json::value_t::array: {
      bool flat = true;
      for (const auto& item : v) flat = flat && item.is_primitive();
      begin_array(flat);
      for (const auto& item : v) value(item);
      return end_array();
    }
    case nlohmann::json::value_t::number_float:
      return value(v.get<double>());
    case nlohmann::json::value_t::number_integer:
      return value(v.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return value(v.get<unsigned long long>());
    case nlohmann::json::value_t::boolean:
      return value(v.get<bool>());
    case nlohmann::json::value_t::string:
      return value(std::string_view(v.get_ref<const std::string&>()));
    default:
      return null();
  }
}

JsonWriter& JsonWriter::null() {
  before_value();
  os_ << "null";
  return *this;
}

JsonWriter& JsonWriter::values(const std::vector<double>& v) {
  begin_array(true);
  for (double d : v) value(d);
  return end_array();
}

void JsonWriter::finish() { os_ << '\n'; }

std::string CsvWriter::escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) os_ << ',';
    os_ << escape(fields[i]);
  }
  os_ << "\r\n";
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

}  // namespace nudirac::cli
