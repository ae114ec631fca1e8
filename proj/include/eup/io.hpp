#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace eup {

/// Shortest-width decimal with 17 significant digits: enough for an exact
/// double round trip, and byte-stable across runs.
std::string fmt17(double v);

/// Minimal JSON emitter with caller-controlled key order and fmt17 floats.
/// Stable output bytes are part of the artifact contract, so this stays
/// independent of any library's float formatting policy.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key);
  JsonWriter& begin_object(const std::string& key);
  JsonWriter& end_array();
  JsonWriter& field(const std::string& key, double v);
  JsonWriter& field(const std::string& key, int v);
  JsonWriter& field(const std::string& key, std::int64_t v);
  JsonWriter& field(const std::string& key, std::uint64_t v);
  JsonWriter& field(const std::string& key, bool v);
  JsonWriter& field(const std::string& key, const std::string& v);
  JsonWriter& field(const std::string& key, const char* v);
  JsonWriter& element(double v);
  JsonWriter& element(const std::string& v);

  std::string str() const { return out_; }

 private:
  void comma();
  void indent();
  void key(const std::string& k);
  std::string out_;
  std::vector<bool> first_;  // per nesting level
  int depth_ = 0;
};

/// One CSV column: name plus values.
struct CsvColumn {
  std::string name;
  std::vector<double> values;
};

/// Comma-separated, header row, LF endings, fmt17 values.
std::string csv_table(const std::vector<CsvColumn>& columns);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace eup
