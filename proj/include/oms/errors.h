#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oms {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a documented precondition (ordering, bounds, sizes).
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// A numeric parameter is outside its domain (radius, sigma, stride, alpha).
class ParameterError : public Error
{
public:
  using Error::Error;
};

/// A kernel does not fit the frame it is applied to.
class DimensionError : public Error
{
public:
  using Error::Error;
};

/// A configuration is internally inconsistent (scene files, strided grids).
class ConfigError : public Error
{
public:
  using Error::Error;
};

/// Malformed file contents. `offset()` is the byte offset of the problem,
/// or the 1-based line number for text formats.
class ParseError : public Error
{
public:
  ParseError(const std::string & what, std::uint64_t offset)
  : Error(what), offset_(offset)
  {}

  std::uint64_t offset() const noexcept { return offset_; }

private:
  std::uint64_t offset_;
};

class IoError : public Error
{
public:
  using Error::Error;
};

/// A dataset directory does not follow the layout an adapter expects.
class ImportError : public Error
{
public:
  using Error::Error;
};

}  // namespace oms
