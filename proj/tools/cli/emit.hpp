#pragma once

// Deterministic JSON and CSV emission. Doubles are written with 17
// significant digits; non-finite values become null (JSON) or nan/inf (CSV).

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nudirac/models.hpp"

namespace nudirac::cli {

std::string format_number(double v);

class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  /// Inline objects and arrays are written on a single line.
  JsonWriter& begin_object(bool inline_items = false);
  JsonWriter& end_object();
  JsonWriter& begin_array(bool inline_items = false);
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long v);
  JsonWriter& value(unsigned long v);
  JsonWriter& value(unsigned long long v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(const std::string& v) { return value(std::string_view(v)); }
  JsonWriter& value(const cplx& v);
  JsonWriter& value(const nlohmann::ordered_json& v);
  JsonWriter& null();
  JsonWriter& values(const std::vector<double>& v);

  template <class T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  /// Closes the document with a trailing newline.
  void finish();

 private:
  struct Level {
    bool object;
    bool inline_items;
    int count;
  };
  void before_value();
  void newline();
  std::ostream& os_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

/// RFC 4180: fields containing a comma, quote, CR or LF are quoted and
/// embedded quotes doubled; records end with CRLF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);
  static std::string escape(std::string_view field);

 private:
  std::ostream& os_;
};

std::string csv_number(double v);

}  // namespace nudirac::cli
