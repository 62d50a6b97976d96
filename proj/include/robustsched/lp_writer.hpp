#pragma once
// Minimal LP-format writer shared by the model exporters. Emits the classic
// sections (objective, Subject To, Bounds, Binaries) with deterministic
// ordering so exported files diff cleanly.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "robustsched/model.hpp"

namespace robustsched {

struct LinTerm {
  i64 coef = 0;
  std::string var;
};

enum class Rel { kLe, kEq, kGe };

struct LinRow {
  std::string name;
  std::vector<LinTerm> terms;
  Rel rel = Rel::kLe;
  i64 rhs = 0;
};

struct VarBound {
  std::string var;
  std::optional<i64> lo;
  std::optional<i64> hi;
};

struct LpModel {
  std::string comment;  // single leading comment line
  bool maximize = false;
  std::vector<LinTerm> objective;
  i64 objective_constant = 0;
  std::vector<LinRow> rows;
  std::vector<VarBound> bounds;
  std::vector<std::string> binaries;

  std::string to_text() const {
    std::ostringstream out;
    if (!comment.empty()) out << "\\ " << comment << "\n";
    out << (maximize ? "Maximize" : "Minimize") << "\n obj:";
    if (has_nonzero(objective))
      append_terms(out, objective);
    else
      out << " 0 " << any_var();  // all-zero objective, keep the line well formed
    if (objective_constant > 0)
      out << " + " << objective_constant;
    else if (objective_constant < 0)
      out << " - " << -objective_constant;
    out << "\nSubject To\n";
    for (const LinRow& row : rows) {
      out << " " << row.name << ":";
      append_terms(out, row.terms);
      out << (row.rel == Rel::kLe ? " <= " : row.rel == Rel::kEq ? " = " : " >= ") << row.rhs
          << "\n";
    }
    if (!bounds.empty()) {
      out << "Bounds\n";
      for (const VarBound& b : bounds) {
        out << " ";
        if (b.lo && b.hi)
          out << *b.lo << " <= " << b.var << " <= " << *b.hi;
        else if (b.lo)
          out << b.var << " >= " << *b.lo;
        else if (b.hi)
          out << b.var << " <= " << *b.hi;
        else
          out << b.var << " free";
        out << "\n";
      }
    }
    if (!binaries.empty()) {
      out << "Binaries\n";
      for (std::size_t i = 0; i < binaries.size(); ++i) {
        out << " " << binaries[i];
        if (i % 8 == 7) out << "\n";
      }
      if (binaries.size() % 8 != 0) out << "\n";
    }
    out << "End\n";
    return out.str();
  }

 private:
  static bool has_nonzero(const std::vector<LinTerm>& terms) {
    for (const LinTerm& t : terms)
      if (t.coef != 0) return true;
    return false;
  }

  std::string any_var() const {
    if (!binaries.empty()) return binaries.front();
    if (!bounds.empty()) return bounds.front().var;
    for (const LinRow& row : rows)
      if (!row.terms.empty()) return row.terms.front().var;
    return "x0";
  }

  static void append_terms(std::ostringstream& out, const std::vector<LinTerm>& terms) {
    bool first = true;
    for (const LinTerm& t : terms) {
      if (t.coef == 0) continue;
      if (first) {
        out << " ";
        if (t.coef < 0) out << "- ";
      } else {
        out << (t.coef < 0 ? " - " : " + ");
      }
      const i64 mag = t.coef < 0 ? -t.coef : t.coef;
      if (mag != 1) out << mag << " ";
      out << t.var;
      first = false;
    }
  }
};

}  // namespace robustsched
