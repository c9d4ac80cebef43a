#pragma once

#include <stdexcept>
#include <string>

namespace twinterf {

/// Envelope whose norm is too small to be rescaled to one.
class ZeroEnvelope : public std::domain_error {
 public:
  explicit ZeroEnvelope(const std::string& what) : std::domain_error(what) {}
};

/// Two envelopes or spectra live on different sampling grids.
class GridMismatch : public std::invalid_argument {
 public:
  explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A pulse (or part of it) would be pushed outside the sampling window.
class WindowOverflow : public std::out_of_range {
 public:
  explicit WindowOverflow(const std::string& what) : std::out_of_range(what) {}
};

class InvalidN : public std::invalid_argument {
 public:
  explicit InvalidN(const std::string& what) : std::invalid_argument(what) {}
};

class TooManyPhotons : public std::invalid_argument {
 public:
  explicit TooManyPhotons(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace twinterf
