// Internal PDF object model. Not installed; the public backend surface is
// pdfvex/pdf/backend.hpp.
#ifndef PDFVEX_SRC_PDF_OBJECTS_HPP
#define PDFVEX_SRC_PDF_OBJECTS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace pdfvex::pdf {

struct Object;

struct Ref {
  int num = 0;
  int gen = 0;
  bool operator==(const Ref&) const = default;
  auto operator<=>(const Ref&) const = default;
};

struct Name {
  std::string value;
  bool operator==(const Name&) const = default;
};

using Array = std::vector<Object>;
using Dict = std::map<std::string, Object>;

struct Stream {
  Dict dict;
  std::vector<std::uint8_t> raw;  // still encoded; see decode_stream
};

struct Object {
  // monostate = null
  std::variant<std::monostate, bool, double, std::string, Name, Array, Dict,
               std::shared_ptr<Stream>, Ref>
      value;

  Object() = default;
  template <typename T>
  Object(T v) : value(std::move(v)) {}

  bool is_null() const { return std::holds_alternative<std::monostate>(value); }
  bool is_number() const { return std::holds_alternative<double>(value); }
  bool is_string() const { return std::holds_alternative<std::string>(value); }
  bool is_name() const { return std::holds_alternative<Name>(value); }
  bool is_array() const { return std::holds_alternative<Array>(value); }
  bool is_dict() const { return std::holds_alternative<Dict>(value); }
  bool is_stream() const {
    return std::holds_alternative<std::shared_ptr<Stream>>(value);
  }
  bool is_ref() const { return std::holds_alternative<Ref>(value); }
  bool is_bool() const { return std::holds_alternative<bool>(value); }

  double number(double fallback = 0.0) const {
    if (auto* d = std::get_if<double>(&value)) return *d;
    return fallback;
  }
  long long integer(long long fallback = 0) const {
    if (auto* d = std::get_if<double>(&value))
      return static_cast<long long>(*d);
    return fallback;
  }
  const std::string& string() const { return std::get<std::string>(value); }
  const std::string& name() const { return std::get<Name>(value).value; }
  const Array& array() const { return std::get<Array>(value); }
  const Dict& dict() const {
    if (auto* s = std::get_if<std::shared_ptr<Stream>>(&value))
      return (*s)->dict;
    return std::get<Dict>(value);
  }
  const std::shared_ptr<Stream>& stream() const {
    return std::get<std::shared_ptr<Stream>>(value);
  }
  Ref ref() const { return std::get<Ref>(value); }

  /// Dict lookup without resolving indirect references; null when absent.
  const Object& get(const std::string& key) const {
    static const Object null_obj;
    if (!is_dict() && !is_stream()) return null_obj;
    const Dict& d = dict();
    auto it = d.find(key);
    return it == d.end() ? null_obj : it->second;
  }

  bool name_is(const std::string& v) const { return is_name() && name() == v; }
};

}  // namespace pdfvex::pdf

#endif  // PDFVEX_SRC_PDF_OBJECTS_HPP
