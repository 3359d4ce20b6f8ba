#ifndef WFDE_LEDGER_HPP
#define WFDE_LEDGER_HPP

#include <map>
#include <string>

namespace wfde {

// Append-only store of measured constants, last-writer-wins per key within a
// session.  The paper asserts existence of these constants; their values here
// are suprema of ratios over the versioned probe families, recorded together
// with the provenance string of the producing sweep.
class ConstantLedger {
public:
  struct Entry {
    double value = 0.0;
    std::string provenance;
  };

  void set(const std::string& name, double value, const std::string& provenance);
  double get(const std::string& name) const;        // throws MissingConstant
  double get_or(const std::string& name, double fallback) const;
  bool has(const std::string& name) const;
  const std::map<std::string, Entry>& entries() const { return entries_; }

  void set_version(std::uint64_t v) { version_ = v; }
  std::uint64_t version() const { return version_; }

  std::string to_json() const;
  static ConstantLedger from_json(const std::string& text);

private:
  std::map<std::string, Entry> entries_;
  std::uint64_t version_ = 0;
};

} // namespace wfde

#endif
