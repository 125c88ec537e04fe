#pragma once

// Structure file format, line based:
//   triff-structure v1
//   shape word|tree
//   length <L>            (word)
//   branching <b>         (tree)
//   depth <d>             (tree: full tree)   or   nodes e,0,1,00,...
//   alphabet <k>          (optional, enables letters)
//   letters 0,1,2,...     (word: per position)
//   letters e:0,0:1,...   (tree: node:letter, every node)
//   constant <name> <element>
//   set <name> <e1>,<e2>,...
// Elements are positions for words and node strings for trees, the root
// written as "e". '#' starts a comment line.

#include <filesystem>
#include <string>
#include <string_view>

#include "triff/msolab/structure.hpp"

namespace triff::msolab {

LabStructure parse_structure(std::string_view text);
std::string render_structure(const LabStructure& s);

LabStructure read_structure_file(const std::filesystem::path& path);
void write_structure_file(const std::filesystem::path& path, const LabStructure& s);

}  // namespace triff::msolab
