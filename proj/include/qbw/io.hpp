#pragma once

#include "qbw/braiding.hpp"
#include "qbw/coalgebra.hpp"
#include "qbw/hopf.hpp"
#include "qbw/linalg.hpp"
#include "qbw/qbrace.hpp"
#include "qbw/skewforms.hpp"

#include <map>
#include <string>
#include <vector>

namespace qbw {

// Structure-constant files. Line-oriented text:
//
//   qbw 1 <field-spec>            header; field-spec = rationals | prime p | cyclotomic n
//   section <type> [name]         type is one of section_types()
//   dim N                         carrier dimension, before any tensor entry
//   target_dim N                  cocycle sections only
//   label i <text>                optional basis labels (text runs to end of line)
//   tlabel i <text>               labels of the cocycle target
//   <tensor> i1 ... ik <literal>  one structure constant; unspecified entries are zero
//   end                           closes the section
//
// '#' starts a comment; blank lines are ignored. Scalar literals use the
// field's own syntax ("a/b", "a mod p", "c0 + c1*z + ... (zeta n)") and run to
// the end of the line. Tensor entries list input indices first, then output
// indices: "delta j a b c" says Delta(e_j) contains c * e_a (x) e_b, and
// "mu a b t c" says e_a e_b contains c * e_t.
//
// Emission is canonical: fixed tensor order per section type, entries sorted
// lexicographically by their index tuple, zero entries skipped. parse(emit(f))
// reproduces f exactly and emit(parse(text)) is idempotent.

// One section as raw structure constants; nothing is validated beyond shapes.
struct RawSection {
  std::string type;
  std::string name;
  int dim = 0;
  int target_dim = 0;  // cocycle sections only
  std::vector<std::string> labels;
  std::vector<std::string> target_labels;
  std::map<std::string, Matrix> tensors;

  bool operator==(const RawSection&) const = default;
};

struct StructureFile {
  FieldRef field;
  std::vector<RawSection> sections;
};

bool operator==(const StructureFile& a, const StructureFile& b);

// The nine section types, and the tensors each one carries (in emit order).
const std::vector<std::string>& section_types();
const std::vector<std::string>& tensors_of(const std::string& type);

// Throws Error("ParseError") with a "line L, col C" prefix in the message.
StructureFile parse_structure_file(const std::string& text);
std::string emit_structure_file(const StructureFile& file);

// ---- typed bridges ------------------------------------------------------------
// Sections to in-memory structures. These shape-check and, where the target
// factory validates on construction (qmagma, qbrace, gv), let those errors
// propagate; they never silently repair data.

Coalgebra coalgebra_from_section(const RawSection& s);
// Accepts bialgebra, hopf, qbrace, gv-skew-brace and cocycle sections (the
// cocycle's source Hopf algebra). A stored antipode is kept; none is computed.
HopfAlgebra hopf_from_section(const RawSection& s);
SolutionCandidate solution_from_section(const RawSection& s);
QMagma qmagma_from_section(const RawSection& s);
QBrace qbrace_from_section(const RawSection& s);
GVSkewBrace gv_from_section(const RawSection& s);
LinearQCycle linear_qcycle_from_section(const RawSection& s);
Cocycle cocycle_from_section(const RawSection& s);

// Structures to sections.
RawSection section_of(const Coalgebra& c, std::string name);
RawSection section_of(const HopfAlgebra& h, std::string name, bool as_bialgebra = false);
RawSection section_of(const SolutionCandidate& s, std::string name);
RawSection section_of(const QMagma& x, std::string name);
RawSection section_of(const QBrace& q, std::string name);
RawSection section_of(const GVSkewBrace& gv, std::string name);
RawSection section_of(const LinearQCycle& lq, std::string name);
RawSection section_of(const Cocycle& c, std::string name);

}  // namespace qbw
