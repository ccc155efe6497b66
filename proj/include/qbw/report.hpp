#pragma once

#include <string>
#include <vector>

namespace qbw {

// One named pass/fail line; detail carries the first counterexample when failing.
// An untested item records a claim the current data cannot decide (for example a
// window too small to evaluate both sides); it is never counted as a pass, but it
// does not fail the report either.
struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
  bool untested = false;
};

struct Report {
  std::vector<CheckItem> items;

  void add(std::string name, bool pass, std::string detail = "") {
    items.push_back({std::move(name), pass, std::move(detail), false});
  }

  void add_untested(std::string name, std::string reason) {
    items.push_back({std::move(name), false, std::move(reason), true});
  }

  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& it : other.items)
      items.push_back(
          {prefix.empty() ? it.name : prefix + "." + it.name, it.pass, it.detail, it.untested});
  }

  bool ok() const {
    for (const auto& it : items)
      if (!it.pass && !it.untested) return false;
    return true;
  }

  const CheckItem* find(const std::string& name) const {
    for (const auto& it : items)
      if (it.name == name) return &it;
    return nullptr;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& it : items) {
      out += it.untested ? "UNTESTED " : (it.pass ? "PASS " : "FAIL ");
      out += it.name;
      if (!it.pass && !it.detail.empty()) {
        out += ": ";
        out += it.detail;
      }
      out += '\n';
    }
    return out;
  }
};

}  // namespace qbw
