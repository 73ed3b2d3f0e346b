#ifndef CHARMOD_JSONIO_HPP
#define CHARMOD_JSONIO_HPP

#include <string>

#include "charmod/geometry.hpp"

namespace charmod {

// Complex description files:
// {"ambient_dim": m,
//  "cells": [{"id": "...", "ineqs": [[a1..am, b], ...], "eqs": [...]}, ...],
//  "generate_faces": bool}
// Numbers are integers or "p/q" strings.
CellComplex parse_complex_json(const std::string& text);
CellComplex load_complex_file(const std::string& path);

// Canonical serialization (normalized constraints, cells in complex order,
// generate_faces false). parse -> serialize is idempotent.
std::string serialize_complex(const CellComplex& k);

} // namespace charmod

#endif
