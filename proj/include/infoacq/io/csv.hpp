#pragma once

#include <initializer_list>
#include <string>

#include "infoacq/io/json_writer.hpp"

namespace infoacq::io {

// RFC-4180 CSV: comma-separated fields, CRLF record terminators, quoting
// only when a field needs it (none of ours do).
class CsvWriter {
 public:
  void row(std::initializer_list<std::string> fields) {
    bool first = true;
    for (const std::string& f : fields) {
      if (!first) buf_ += ',';
      first = false;
      buf_ += f;
    }
    buf_ += "\r\n";
  }

  std::string str() && { return std::move(buf_); }

 private:
  std::string buf_;
};

}  // namespace infoacq::io
