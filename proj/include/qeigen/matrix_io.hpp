#pragma once

// Hermitian matrix ingestion. Two JSON layouts share one loader:
//
//   {"dim": 2, "format": "dense", "entries": [[re, im], ...]}   // row-major
//   {"dim": 4, "format": "coo",
//    "entries": [[row, col, re, im], ...]}                      // row <= col
//
// plus an optional fixture wrapper keyed by bond length:
//
//   {"bond_length_angstrom": 0.7, "matrix": { ... as above ... }}

#include <optional>
#include <string>

#include "qeigen/spectra.hpp"

namespace qeigen::io {

struct LoadedMatrix {
    spectra::HermitianOperator op;
    std::optional<double> bond_length_angstrom;
};

LoadedMatrix parse_matrix_file(const std::string& path);
LoadedMatrix parse_matrix_json(const std::string& text);

} // namespace qeigen::io
