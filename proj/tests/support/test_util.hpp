#pragma once

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "infoacq/io/cli.hpp"
#include "infoacq/model.hpp"

namespace test_util {

inline infoacq::ModelParams params_a() { return {0.5, 0.0, 1.0, 1.0, 0.0}; }

// Any valid draw.
inline infoacq::ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {0.05 + 0.90 * u(rng), 4.0 * u(rng), 0.3 + 2.7 * u(rng),
          0.05 + 9.95 * u(rng), 0.99 * u(rng)};
}

// Draws that satisfy the cost bound with margin: c <= c_frac_hi * bound.
inline infoacq::ModelParams random_interior_params(std::mt19937_64& rng,
                                                   double min_delta = 0.0,
                                                   double max_delta = 0.99,
                                                   double c_frac_hi = 0.95) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = 0.1 + 0.8 * u(rng);
  const double sigma0_sq = 2.0 * u(rng);
  const double sigma_sq = 0.5 + 1.5 * u(rng);
  const double delta = min_delta + (max_delta - min_delta) * u(rng);
  const infoacq::ModelParams probe(rho, sigma0_sq, sigma_sq, 1.0, delta);
  const double bound = infoacq::cost_assumption(probe).bound;
  const double c = bound * (0.05 + (c_frac_hi - 0.05) * u(rng));
  return {rho, sigma0_sq, sigma_sq, c, delta};
}

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strict RFC-4180 reader: CRLF record ends, balanced quotes, equal arity.
inline std::vector<std::vector<std::string>> parse_csv_strict(
    const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  enum State { kStart, kUnquoted, kQuoted, kQuoteInQuoted } st = kStart;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
  };
  auto crlf = [&]() -> bool {
    if (i + 1 < n && text[i + 1] == '\n') {
      end_record();
      st = kStart;
      i += 2;
      return true;
    }
    throw CsvError("bare CR");
  };
  while (i < n) {
    const char ch = text[i];
    switch (st) {
      case kStart:
        if (ch == '"') { st = kQuoted; ++i; }
        else if (ch == ',') { end_field(); ++i; }
        else if (ch == '\r') { crlf(); }
        else if (ch == '\n') throw CsvError("bare LF");
        else { st = kUnquoted; field += ch; ++i; }
        break;
      case kUnquoted:
        if (ch == ',') { end_field(); st = kStart; ++i; }
        else if (ch == '\r') { crlf(); }
        else if (ch == '\n') throw CsvError("bare LF");
        else if (ch == '"') throw CsvError("quote inside unquoted field");
        else { field += ch; ++i; }
        break;
      case kQuoted:
        if (ch == '"') { st = kQuoteInQuoted; ++i; }
        else { field += ch; ++i; }
        break;
      case kQuoteInQuoted:
        if (ch == '"') { field += '"'; st = kQuoted; ++i; }
        else if (ch == ',') { end_field(); st = kStart; ++i; }
        else if (ch == '\r') { crlf(); }
        else throw CsvError("garbage after closing quote");
        break;
    }
  }
  if (st == kQuoted) throw CsvError("unterminated quoted field");
  if (st != kStart || !field.empty() || !row.empty()) end_record();
  if (rows.empty()) throw CsvError("empty document");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw CsvError("ragged rows");
  return rows;
}

// Minimal XML well-formedness scan: balanced tags, quoted attributes.
inline void check_xml_wellformed(const std::string& text) {
  auto fail = [](const char* what) {
    throw std::runtime_error(std::string("xml: ") + what);
  };
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    if (text.compare(i, 2, "<?") == 0) {
      const std::size_t e = text.find("?>", i);
      if (e == std::string::npos) fail("unterminated declaration");
      i = e + 2;
      continue;
    }
    if (text.compare(i, 4, "<!--") == 0) {
      const std::size_t e = text.find("-->", i);
      if (e == std::string::npos) fail("unterminated comment");
      i = e + 3;
      continue;
    }
    const bool closing = i + 1 < n && text[i + 1] == '/';
    const std::size_t e = text.find('>', i);
    if (e == std::string::npos) fail("unterminated tag");
    std::string inner = text.substr(i + (closing ? 2 : 1),
                                    e - i - (closing ? 2 : 1));
    const bool self_close = !closing && !inner.empty() && inner.back() == '/';
    if (self_close) inner.pop_back();
    const std::string name = inner.substr(0, inner.find_first_of(" \t\r\n"));
    if (name.empty()) fail("empty tag name");
    if (std::count(inner.begin(), inner.end(), '"') % 2 != 0)
      fail("unbalanced attribute quotes");
    if (closing) {
      if (stack.empty() || stack.back() != name) fail("mismatched closing tag");
      stack.pop_back();
    } else if (!self_close) {
      stack.push_back(name);
    }
    i = e + 1;
  }
  if (!stack.empty()) fail("unclosed tags");
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = infoacq::io::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace test_util
