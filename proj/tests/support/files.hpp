#ifndef CDGA_TEST_FILES_HPP
#define CDGA_TEST_FILES_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace files {

inline std::string fixture_dir() { return CDGA_FIXTURE_DIR; }

inline std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) { return read(std::filesystem::path(fixture_dir()) / name); }

inline std::vector<std::filesystem::path> listing(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".cdga") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct Expectation {
  std::string code;
  std::size_t line = 0;
};

/// First line of an error corpus file: "# expect <Code> <line>".
inline std::optional<Expectation> expectation(const std::string& text) {
  std::istringstream in(text);
  std::string hash, word;
  Expectation e;
  if (!(in >> hash >> word >> e.code >> e.line) || hash != "#" || word != "expect") return std::nullopt;
  return e;
}

}  // namespace files

#endif
