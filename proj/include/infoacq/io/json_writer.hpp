#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace infoacq::io {

// Minimal JSON emitter. Reports serialize numbers with 17 significant digits
// so a re-parse reproduces the exact doubles; non-finite values become null.
// Keys are emitted in insertion order.
class JsonWriter {
 public:
  std::string str() && { return std::move(buf_); }
  const std::string& view() const { return buf_; }

  JsonWriter& begin_object() { open('{'); return *this; }
  JsonWriter& end_object() { close('}'); return *this; }
  JsonWriter& begin_array() { open('['); return *this; }
  JsonWriter& end_array() { close(']'); return *this; }

  JsonWriter& key(const std::string& name) {
    comma();
    append_string(name);
    buf_ += ':';
    fresh_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    comma();
    if (!std::isfinite(v)) {
      buf_ += "null";
    } else {
      char tmp[40];
      std::snprintf(tmp, sizeof tmp, "%.17g", v);
      buf_ += tmp;
    }
    return *this;
  }

  JsonWriter& value(long long v) {
    comma();
    buf_ += std::to_string(v);
    return *this;
  }

  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }

  JsonWriter& value(bool v) {
    comma();
    buf_ += v ? "true" : "false";
    return *this;
  }

  JsonWriter& value(const std::string& v) {
    comma();
    append_string(v);
    return *this;
  }

  JsonWriter& null_value() {
    comma();
    buf_ += "null";
    return *this;
  }

 private:
  void open(char ch) {
    comma();
    buf_ += ch;
    fresh_ = true;
  }
  void close(char ch) {
    buf_ += ch;
    fresh_ = false;
  }
  void comma() {
    if (!fresh_ && !buf_.empty()) {
      const char last = buf_.back();
      if (last != '{' && last != '[' && last != ':') buf_ += ',';
    }
    fresh_ = false;
  }
  void append_string(const std::string& s) {
    buf_ += '"';
    for (char ch : s) {
      switch (ch) {
        case '"': buf_ += "\\\""; break;
        case '\\': buf_ += "\\\\"; break;
        case '\n': buf_ += "\\n"; break;
        case '\r': buf_ += "\\r"; break;
        case '\t': buf_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char tmp[8];
            std::snprintf(tmp, sizeof tmp, "\\u%04x", ch);
            buf_ += tmp;
          } else {
            buf_ += ch;
          }
      }
    }
    buf_ += '"';
  }

  std::string buf_;
  bool fresh_ = true;
};

// %.17g rendering shared with the CSV writer.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char tmp[40];
  std::snprintf(tmp, sizeof tmp, "%.17g", v);
  return tmp;
}

}  // namespace infoacq::io
