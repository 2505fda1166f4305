#pragma once
// Validation outcome shared by every validator: one entry per checked
// clause, plus free-form notes (e.g. degraded checks).

#include <climits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace modhodge {

struct Report {
  static constexpr int kNoLevel = INT_MIN;

  struct Clause {
    std::string id;
    int level;
    bool ok;
    std::string detail;
  };

  std::vector<Clause> clauses;
  std::vector<std::string> notes;

  bool ok() const {
    for (auto& c : clauses)
      if (!c.ok) return false;
    return true;
  }
  void add(const std::string& id, bool pass, const std::string& detail = "",
           int level = kNoLevel) {
    clauses.push_back({id, level, pass, detail});
  }
  void note(const std::string& n) { notes.push_back(n); }
  void merge(const Report& r, const std::string& prefix) {
    for (auto& c : r.clauses) clauses.push_back({prefix + c.id, c.level, c.ok, c.detail});
    for (auto& n : r.notes) notes.push_back(prefix + n);
  }
  std::set<std::string> failed_ids() const {
    std::set<std::string> s;
    for (auto& c : clauses)
      if (!c.ok) s.insert(c.id);
    return s;
  }
  std::string str() const {
    std::ostringstream os;
    for (auto& c : clauses) {
      os << (c.ok ? "pass" : "FAIL") << " " << c.id;
      if (c.level != kNoLevel) os << "@" << c.level;
      if (!c.detail.empty()) os << " (" << c.detail << ")";
      os << "\n";
    }
    for (auto& n : notes) os << "note: " << n << "\n";
    return os.str();
  }
};

}  // namespace modhodge
