#pragma once

#include <stdexcept>
#include <string>

namespace cotlab {

/// Base of every domain error; `code()` is the stable identifier that the
/// CLI puts into JSON error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define COTLAB_DEFINE_ERROR(NAME)                                 \
  class NAME : public Error {                                     \
   public:                                                        \
    explicit NAME(const std::string& what) : Error(#NAME, what) {} \
  }

COTLAB_DEFINE_ERROR(ValidationError);
COTLAB_DEFINE_ERROR(DimensionMismatch);
COTLAB_DEFINE_ERROR(ShapeMismatch);
COTLAB_DEFINE_ERROR(EmptyFamily);
COTLAB_DEFINE_ERROR(MissingKernelRow);
COTLAB_DEFINE_ERROR(MassMismatch);
COTLAB_DEFINE_ERROR(NotRepresentable);
COTLAB_DEFINE_ERROR(GranularityError);
COTLAB_DEFINE_ERROR(NullPath);
COTLAB_DEFINE_ERROR(UndefinedPrefix);
COTLAB_DEFINE_ERROR(NotCompatible);
COTLAB_DEFINE_ERROR(NotRandomizedST);
COTLAB_DEFINE_ERROR(Infeasible);
COTLAB_DEFINE_ERROR(Unbounded);
COTLAB_DEFINE_ERROR(InstanceTooLarge);
COTLAB_DEFINE_ERROR(ParseError);

#undef COTLAB_DEFINE_ERROR

}  // namespace cotlab
