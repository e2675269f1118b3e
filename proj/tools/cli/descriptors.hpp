#pragma once

#include <string>
#include <vector>

#include "bspace/bspace.hpp"
#include "json.hpp"

namespace bspace::cli {

/// szego, bargmann, cantor[:L], sinc, gram:FILE.json, feature:FILE.json.
Kernel parse_kernel(const std::string& descriptor);

/// Measure used when --measure is absent.
std::string default_measure(const Kernel& kernel);

/// uniform:N, hermite:N, band:N, cantor, cantor-ifs:D, point:X, atoms[:W1,...].
/// A bare `atoms` puts the kernel's default atom weights on its canonical
/// extension.
QuadMeasure parse_measure(const std::string& descriptor, const BoundaryExtension& ext);

/// Point set used when --points is absent.
std::string default_points(const Kernel& kernel);

/// A builtin set (gridN, grid:N, disk:N[:R[:SEED]], index:N), a JSON file
/// path, or an inline object {"domain": "complex"|"real"|"index",
/// "points": [...]} with complex values as [re, im].
std::vector<Point> parse_points(const nlohmann::ordered_json& source, const Kernel& kernel);

/// Parses a JSON matrix whose entries are numbers or [re, im] pairs.
CMatrix parse_matrix(const nlohmann::ordered_json& rows, const std::string& what);

/// Point coordinates as a JSON value: number, [re, im] or index.
nlohmann::ordered_json point_json(const Point& p);

}  // namespace bspace::cli
