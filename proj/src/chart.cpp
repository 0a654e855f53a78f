#include "cq/chart.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cq {

const char* space_name(SpaceTag t) {
    switch (t) {
        case SpaceTag::R: return "R";
        case SpaceTag::S: return "S";
        default: return "H";
    }
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, int line) {
    size_t used = 0;
    double val;
    try {
        val = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ChartError("malformed number '" + s + "'", line);
    }
    if (used != s.size()) throw ChartError("malformed number '" + s + "'", line);
    return val;
}

int parse_int(const std::string& s, int line) {
    size_t used = 0;
    int val;
    try {
        val = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw ChartError("malformed integer '" + s + "'", line);
    }
    if (used != s.size()) throw ChartError("malformed integer '" + s + "'", line);
    return val;
}

}  // namespace

ChartSpec parse_chart(const std::string& text) {
    ChartSpec spec;
    std::map<int, std::pair<std::string, int>> coord_text;  // index -> (expr text, line)
    std::set<std::string> seen;
    bool have_domain = false, have_grid = false, have_n = false, have_space = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ChartError("expected 'key = value'", lineno);
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw ChartError("empty key", lineno);
        if (value.empty()) throw ChartError("empty value for key '" + key + "'", lineno);

        if (key == "name") {
            spec.name = value;
        } else if (key == "space") {
            if (value == "R") spec.space = SpaceTag::R;
            else if (value == "S") spec.space = SpaceTag::S;
            else if (value == "H") spec.space = SpaceTag::H;
            else throw ChartError("space must be R, S or H", lineno);
            have_space = true;
        } else if (key == "n") {
            spec.n = parse_int(value, lineno);
            if (spec.n < 3) throw ChartError("n must be >= 3", lineno);
            have_n = true;
        } else if (key.rfind("const ", 0) == 0) {
            std::string cname = strip(key.substr(6));
            if (cname.empty()) throw ChartError("missing constant name", lineno);
            spec.constants[cname] = parse_number(value, lineno);
        } else if (key == "domain") {
            std::istringstream ds(value);
            std::vector<std::string> parts;
            std::string p;
            while (ds >> p) parts.push_back(p);
            if (parts.size() != 4) throw ChartError("domain needs 4 numbers: u0 u1 v0 v1", lineno);
            spec.u0 = parse_number(parts[0], lineno);
            spec.u1 = parse_number(parts[1], lineno);
            spec.v0 = parse_number(parts[2], lineno);
            spec.v1 = parse_number(parts[3], lineno);
            if (!(spec.u0 < spec.u1) || !(spec.v0 < spec.v1))
                throw ChartError("domain must be non-degenerate", lineno);
            have_domain = true;
        } else if (key == "grid") {
            std::istringstream gs(value);
            std::vector<std::string> parts;
            std::string p;
            while (gs >> p) parts.push_back(p);
            if (parts.size() != 2) throw ChartError("grid needs 2 integers", lineno);
            spec.mu = parse_int(parts[0], lineno);
            spec.mv = parse_int(parts[1], lineno);
            if (spec.mu < 2 || spec.mv < 2) throw ChartError("grid counts must be >= 2", lineno);
            have_grid = true;
        } else if (key.size() >= 2 && key[0] == 'x') {
            int idx;
            try {
                size_t used = 0;
                idx = std::stoi(key.substr(1), &used);
                if (used != key.size() - 1) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ChartError("unknown key '" + key + "'", lineno);
            }
            coord_text[idx] = {value, lineno};
        } else {
            throw ChartError("unknown key '" + key + "'", lineno);
        }
        if (seen.count(key) && key.rfind("const ", 0) != 0)
            throw ChartError("duplicate key '" + key + "'", lineno);
        seen.insert(key);
    }

    if (!have_space) throw ChartError("missing key 'space'", 0);
    if (!have_n) throw ChartError("missing key 'n'", 0);
    if (!have_domain) throw ChartError("missing key 'domain'", 0);
    if (!have_grid) throw ChartError("missing key 'grid'", 0);
    if (coord_text.empty()) throw ChartError("missing coordinate expressions x1...", 0);

    // x1..xk contiguous from 1, count matching the model dimension
    int expected = spec.model_dim();
    for (int i = 1; i <= (int)coord_text.size(); ++i)
        if (!coord_text.count(i))
            throw ChartError("coordinate keys must be contiguous from x1; missing x" +
                                 std::to_string(i), 0);
    if ((int)coord_text.size() != expected)
        throw ChartError("expected " + std::to_string(expected) + " coordinates for space " +
                             space_name(spec.space) + " with n = " + std::to_string(spec.n) +
                             ", got " + std::to_string(coord_text.size()), 0);

    std::set<std::string> const_names;
    for (const auto& [k, v] : spec.constants) const_names.insert(k);
    for (int i = 1; i <= expected; ++i) {
        const auto& [txt, line] = coord_text[i];
        try {
            spec.coords.push_back(parse_expression(txt, const_names));
        } catch (const ExprParseError& e) {
            throw ChartError(std::string("x") + std::to_string(i) + ": " + e.what(), line);
        }
    }
    return spec;
}

ChartSpec load_chart(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ChartError("cannot open chart file " + file.string(), 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_chart(buf.str());
}

}  // namespace cq
