#pragma once

#include <stdexcept>
#include <string>

namespace cloudsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PastEventError : Error {
  using Error::Error;
};

struct NoScenarioError : Error {
  using Error::Error;
};

struct EmptyLabelError : Error {
  using Error::Error;
};

struct SyntaxError : Error {
  using Error::Error;
};

struct UnknownReferenceError : Error {
  explicit UnknownReferenceError(const std::string& id)
      : Error("unknown reference: " + id), id(id) {}
  std::string id;
};

struct DuplicateIdError : Error {
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate id: " + id), id(id) {}
  std::string id;
};

struct UnreachableError : Error {
  explicit UnreachableError(const std::string& target)
      : Error("unreachable target: " + target), target(target) {}
  std::string target;
};

struct UnknownIngressError : Error {
  using Error::Error;
};

struct OutOfRangeError : Error {
  using Error::Error;
};

struct NonContiguousStagesError : Error {
  using Error::Error;
};

struct NegativeTargetError : Error {
  using Error::Error;
};

struct NoHealthyBackendError : Error {
  using Error::Error;
};

struct NoRouteForHostError : Error {
  explicit NoRouteForHostError(const std::string& host)
      : Error("no route for host: " + host), host(host) {}
  std::string host;
};

struct ZeroReplicasError : Error {
  using Error::Error;
};

struct EmptySeriesError : Error {
  using Error::Error;
};

struct UnknownNodeError : Error {
  explicit UnknownNodeError(const std::string& id)
      : Error("unknown node: " + id), id(id) {}
  std::string id;
};

struct UnpricedCategoryError : Error {
  using Error::Error;
};

struct MissingGpuPricesError : Error {
  using Error::Error;
};

struct MissingInputError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace cloudsim
