#include "sprouts/solver/database.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sprouts/core/canonize.hpp"

namespace sprouts::solver {

DatabaseError::DatabaseError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

std::optional<Nimber> NimberDatabase::lookup(const std::string& land) const {
  std::lock_guard lock(mu_);
  if (auto it = map_.find(land); it != map_.end()) return it->second;
  return std::nullopt;
}

bool NimberDatabase::store(const std::string& land, Nimber n) {
  std::lock_guard lock(mu_);
  return map_.emplace(land, n).second;
}

std::size_t NimberDatabase::size() const {
  std::lock_guard lock(mu_);
  return map_.size();
}

void NimberDatabase::clear() {
  std::lock_guard lock(mu_);
  map_.clear();
}

std::map<std::string, Nimber> NimberDatabase::entries() const {
  std::lock_guard lock(mu_);
  return {map_.begin(), map_.end()};
}

std::string NimberDatabase::source() const {
  std::lock_guard lock(mu_);
  return source_;
}

void NimberDatabase::set_source(std::string s) {
  std::lock_guard lock(mu_);
  source_ = std::move(s);
}

namespace {

Nimber parse_nimber(std::string_view text, std::size_t line) {
  Nimber n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw DatabaseError("malformed nimber '" + std::string(text) + "'", line);
  return n;
}

}

void NimberDatabase::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatabaseError("cannot open " + path.string(), 0);
  std::string line;
  if (!std::getline(in, line)) throw DatabaseError("missing header", 1);
  if (line.rfind("SPROUTS-NIMBER-DB ", 0) != 0) throw DatabaseError("missing header", 1);
  if (line != kHeader) throw DatabaseError("unsupported database version '" + line.substr(18) + "'", 1);
  std::unordered_map<std::string, Nimber> loaded;
  std::string src;
  for (std::size_t no = 2; std::getline(in, line); ++no) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# source: ", 0) == 0) src = line.substr(10);
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw DatabaseError("expected <land>\\t<nimber>", no);
    loaded[line.substr(0, tab)] = parse_nimber(std::string_view(line).substr(tab + 1), no);
  }
  std::lock_guard lock(mu_);
  for (auto& [k, v] : loaded) map_[k] = v;
  if (!src.empty()) source_ = src;
}

void NimberDatabase::save(const std::filesystem::path& path) const {
  auto sorted = entries();
  std::ofstream out(path);
  if (!out) throw DatabaseError("cannot write " + path.string(), 0);
  out << kHeader << '\n';
  if (auto s = source(); !s.empty()) out << "# source: " << s << '\n';
  for (const auto& [k, v] : sorted) out << k << '\t' << v << '\n';
  if (!out) throw DatabaseError("write failed for " + path.string(), 0);
}

std::size_t NimberDatabase::import_glop(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatabaseError("cannot open " + path.string(), 0);
  std::string line;
  std::size_t count = 0;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string land, value;
    if (!(fields >> land >> value)) throw DatabaseError("expected <land> <nimber>", no);
    Nimber n = parse_nimber(value, no);
    std::string key;
    try {
      key = canonical_string(land);
    } catch (const std::exception& e) {
      throw DatabaseError(std::string("bad land: ") + e.what(), no);
    }
    if (key.find('+') != std::string::npos || key.empty())
      throw DatabaseError("entry does not reduce to a single land", no);
    store(key, n);
    ++count;
  }
  return count;
}

}
