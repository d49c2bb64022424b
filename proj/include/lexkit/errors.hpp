#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lexkit {

/// Machine-readable error classification. Every lexkit exception carries one
/// of these codes in addition to its human-readable message.
enum class errc {
    // feature model
    invalid_token,
    duplicate_attribute,
    conflict,
    // tabular record files / registry
    parse_error,
    dangling_reference,
    duplicate_id,
    non_bijective_scheme,
    unknown_attribute,
    unknown_code,
    unknown_value,
    // tagset / MSD codec
    unknown_data_category,
    duplicate_code,
    reserved_dash,
    unknown_category,
    tag_too_long,
    missing_category,
    unknown_feature,
    value_not_in_slot,
    field_count,
    // XML / dialect serialization
    xml_error,
    unknown_element,
    unmappable_value,
    structural_violation,
    not_expressible,
    // converter / environment
    line_errors,
    io_error,
};

inline const char* errc_name(errc c) noexcept {
    switch (c) {
        case errc::invalid_token:         return "InvalidToken";
        case errc::duplicate_attribute:   return "DuplicateAttribute";
        case errc::conflict:              return "Conflict";
        case errc::parse_error:           return "ParseError";
        case errc::dangling_reference:    return "DanglingReference";
        case errc::duplicate_id:          return "DuplicateId";
        case errc::non_bijective_scheme:  return "NonBijectiveScheme";
        case errc::unknown_attribute:     return "UnknownAttribute";
        case errc::unknown_code:          return "UnknownCode";
        case errc::unknown_value:         return "UnknownValue";
        case errc::unknown_data_category: return "UnknownDataCategory";
        case errc::duplicate_code:        return "DuplicateCode";
        case errc::reserved_dash:         return "ReservedDash";
        case errc::unknown_category:      return "UnknownCategory";
        case errc::tag_too_long:          return "TagTooLong";
        case errc::missing_category:      return "MissingCategory";
        case errc::unknown_feature:       return "UnknownFeature";
        case errc::value_not_in_slot:     return "ValueNotInSlot";
        case errc::field_count:           return "FieldCount";
        case errc::xml_error:             return "XmlError";
        case errc::unknown_element:       return "UnknownElement";
        case errc::unmappable_value:      return "UnmappableValue";
        case errc::structural_violation:  return "StructuralViolation";
        case errc::not_expressible:       return "NotExpressible";
        case errc::line_errors:           return "LineErrors";
        case errc::io_error:              return "IoError";
    }
    return "UnknownError";
}

/// Exception type for all lexkit failures. `line()` is the 1-based line of
/// the offending input record where that makes sense, 0 otherwise.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message, std::size_t line = 0)
        : std::runtime_error(format(code, message, line)), code_(code), line_(line) {}

    errc code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(errc code, const std::string& message, std::size_t line) {
        std::string s = errc_name(code);
        s += ": ";
        s += message;
        if (line != 0) {
            s += " (line ";
            s += std::to_string(line);
            s += ")";
        }
        return s;
    }

    errc code_;
    std::size_t line_;
};

[[noreturn]] inline void raise(errc code, const std::string& message, std::size_t line = 0) {
    throw Error(code, message, line);
}

} // namespace lexkit
