#include "eup/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace eup {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::comma() {
  if (!first_.empty()) {
    if (!first_.back()) out_ += ",";
    first_.back() = false;
  }
  if (depth_ > 0) {
    out_ += "\n";
    indent();
  }
}

void JsonWriter::indent() {
  for (int i = 0; i < depth_; ++i) out_ += "  ";
}

void JsonWriter::key(const std::string& k) {
  comma();
  out_ += "\"" + k + "\": ";
}

JsonWriter& JsonWriter::begin_object() {
  if (!first_.empty()) comma();
  out_ += "{";
  first_.push_back(true);
  ++depth_;
  return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& k) {
  key(k);
  out_ += "{";
  first_.push_back(true);
  ++depth_;
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  --depth_;
  if (!first_.back()) {
    out_ += "\n";
    indent();
  }
  out_ += "}";
  first_.pop_back();
  if (depth_ == 0) out_ += "\n";
  return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& k) {
  key(k);
  out_ += "[";
  first_.push_back(true);
  ++depth_;
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  --depth_;
  if (!first_.back()) {
    out_ += "\n";
    indent();
  }
  out_ += "]";
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, double v) {
  key(k);
  out_ += fmt17(v);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, int v) {
  key(k);
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, std::int64_t v) {
  key(k);
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, std::uint64_t v) {
  key(k);
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, bool v) {
  key(k);
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, const std::string& v) {
  key(k);
  out_ += "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += "\"";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, const char* v) {
  return field(k, std::string(v));
}

JsonWriter& JsonWriter::element(double v) {
  comma();
  out_ += fmt17(v);
  return *this;
}

JsonWriter& JsonWriter::element(const std::string& v) {
  comma();
  out_ += "\"" + v + "\"";
  return *this;
}

std::string csv_table(const std::vector<CsvColumn>& columns) {
  if (columns.empty()) throw std::invalid_argument("csv: no columns");
  const std::size_t rows = columns.front().values.size();
  for (const auto& c : columns)
    if (c.values.size() != rows) throw std::invalid_argument("csv: ragged columns");
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ",";
    out += columns[c].name;
  }
  out += "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ",";
      out += fmt17(columns[c].values[r]);
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace eup
