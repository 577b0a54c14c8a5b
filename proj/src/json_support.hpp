#pragma once

// Shared helpers for the JSON file loaders: parse errors are reported with
// line and column, field errors with the record index and key.

#include <algorithm>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gravshift/error.hpp"

namespace gravshift::detail {

inline nlohmann::json parse_json(std::string_view text, std::string_view source) {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": invalid JSON");
    }
}

class RecordContext {
public:
    RecordContext(std::string_view source, std::size_t index) : source_(source), index_(index) {}

    [[noreturn]] void fail(std::string_view field, std::string_view problem) const {
        throw ParseError(std::string(source_) + ": record " + std::to_string(index_) + ": field '" +
                         std::string(field) + "' " + std::string(problem));
    }

    double number(const nlohmann::json& obj, const char* key) const {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            fail(key, "is missing");
        }
        if (!it->is_number()) {
            fail(key, "must be a number");
        }
        return it->get<double>();
    }

    std::string string(const nlohmann::json& obj, const char* key) const {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            fail(key, "is missing");
        }
        if (!it->is_string()) {
            fail(key, "must be a string");
        }
        return it->get<std::string>();
    }

    const nlohmann::json& array(const nlohmann::json& obj, const char* key) const {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            fail(key, "is missing");
        }
        if (!it->is_array()) {
            fail(key, "must be an array");
        }
        return *it;
    }

    const nlohmann::json& object(const nlohmann::json& obj, const char* key) const {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            fail(key, "is missing");
        }
        if (!it->is_object()) {
            fail(key, "must be an object");
        }
        return *it;
    }

private:
    std::string_view source_;
    std::size_t index_;
};

/// Parses text that must hold a JSON array; an empty (whitespace-only) file
/// is read as an empty array.
inline nlohmann::json parse_json_array(std::string_view text, std::string_view source) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        return nlohmann::json::array();
    }
    auto doc = parse_json(text, source);
    if (!doc.is_array()) {
        throw ParseError(std::string(source) + ": top level must be a JSON array");
    }
    return doc;
}

}  // namespace gravshift::detail
