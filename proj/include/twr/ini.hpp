#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace twr {

/// Minimal INI reader: [section] headers, key = value pairs, '#'/';' comments.
/// Line numbers are kept so configuration errors point at the offending line.
class IniFile {
public:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };

    static IniFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_string(buffer.str(), path);
    }

    static IniFile parse_string(const std::string& text, const std::string& name = "<string>") {
        IniFile ini;
        ini.name_ = name;
        std::istringstream in(text);
        std::string line, section;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = strip_comment_and_trim(line);
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                             ": unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                if (section.empty())
                    throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                             ": empty section name");
                ini.sections_[section];  // sections may be empty
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                         ": expected 'key = value'");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty())
                throw std::runtime_error(name + ":" + std::to_string(lineno) + ": empty key");
            if (section.empty())
                throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                         ": key before any [section]");
            ini.sections_[section][key] = Entry{value, lineno};
        }
        return ini;
    }

    bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

    std::vector<std::string> sections_with_prefix(const std::string& prefix) const {
        std::vector<std::string> out;
        for (const auto& [name, _] : sections_)
            if (name.rfind(prefix, 0) == 0) out.push_back(name);
        return out;
    }

    std::optional<std::string> get(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        if (s == sections_.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second.value;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
        auto v = get(section, key);
        return v ? *v : fallback;
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        try {
            std::size_t used = 0;
            const double d = std::stod(*v, &used);
            if (used != v->size()) throw std::invalid_argument("trailing characters");
            return d;
        } catch (const std::exception&) {
            fail(section, key, "expected a number, got '" + *v + "'");
        }
    }

    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        try {
            return std::stoull(*v);
        } catch (const std::exception&) {
            fail(section, key, "expected an unsigned integer, got '" + *v + "'");
        }
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        auto v = get(section, key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        fail(section, key, "expected true/false, got '" + *v + "'");
    }

    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& message) const {
        std::size_t line = 0;
        auto s = sections_.find(section);
        if (s != sections_.end()) {
            auto k = s->second.find(key);
            if (k != s->second.end()) line = k->second.line;
        }
        throw std::runtime_error(name_ + ":" + std::to_string(line) + ": [" + section + "] " +
                                 key + ": " + message);
    }

private:
    static std::string trim(const std::string& s) {
        const auto begin = s.find_first_not_of(" \t\r");
        if (begin == std::string::npos) return {};
        const auto end = s.find_last_not_of(" \t\r");
        return s.substr(begin, end - begin + 1);
    }

    static std::string strip_comment_and_trim(const std::string& s) {
        std::string out = s;
        for (char marker : {'#', ';'}) {
            const auto pos = out.find(marker);
            if (pos != std::string::npos) out.erase(pos);
        }
        return trim(out);
    }

    std::string name_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

}  // namespace twr
