#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace sprouts::solver {

using Nimber = std::uint32_t;

class DatabaseError : public std::runtime_error {
public:
  DatabaseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Canonical single-land string -> nimber. Every entry is a losing couple.
// All members are safe to call concurrently.
class NimberDatabase {
public:
  static constexpr const char* kHeader = "SPROUTS-NIMBER-DB 1";

  NimberDatabase() = default;
  NimberDatabase(const NimberDatabase&) = delete;
  NimberDatabase& operator=(const NimberDatabase&) = delete;

  std::optional<Nimber> lookup(const std::string& land) const;
  // Returns false when the key was already present.
  bool store(const std::string& land, Nimber n);
  std::size_t size() const;
  void clear();
  std::map<std::string, Nimber> entries() const;

  std::string source() const;
  void set_source(std::string s);

  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  // Lines "<land> <nimber>" in plain position notation; keys are re-canonized.
  // Returns the number of imported entries.
  std::size_t import_glop(const std::filesystem::path& path);

private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, Nimber> map_;
  std::string source_;
};

}
