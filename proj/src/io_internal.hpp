#pragma once

#include "fraisse/io.hpp"

namespace fraisse::io_detail {

inline const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return need(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad field \"") + key + "\": " + e.what());
    }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
    return get<T>(j, key);
}

inline std::vector<int> ints(const Json& j) {
    try {
        return j.get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("expected a list of integers: ") + e.what());
    }
}


}  // namespace fraisse::io_detail
