#pragma once

#include <stdexcept>

namespace erel {

/// Malformed or inconsistent caller-supplied data: unreadable files, bad
/// coordinates, mismatched dimensions. The CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Structurally valid data that is degenerate for the requested computation
/// (constant image, empty region, undefined ratio). CLI exit code 2.
class degenerate_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The direct conic fit did not yield an ellipse. A subtype of
/// degenerate_error so pipeline callers can fall back to the moment ellipse.
class fit_error : public degenerate_error {
public:
  using degenerate_error::degenerate_error;
};

} // namespace erel
