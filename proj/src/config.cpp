#include "mns/config.hpp"

#include "mns/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mns {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

double parse_number(std::string_view text, const std::string& where) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        fail(where, "cannot read number '" + std::string(text) + "'");
    return value;
}

double parse_fraction(std::string_view text, const std::string& where) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return parse_number(text, where);
    const double den = parse_number(text.substr(slash + 1), where);
    if (den == 0.0)
        fail(where, "zero denominator");
    return parse_number(text.substr(0, slash), where) / den;
}

const json& member(const json& doc, const char* key, const std::string& where) {
    if (!doc.is_object() || !doc.contains(key))
        fail(where, std::string("missing '") + key + "'");
    return doc.at(key);
}

std::vector<std::string> read_word(const json& value, const std::vector<std::string>& alphabet,
                                   const std::string& where) {
    std::vector<std::string> out;
    if (value.is_array()) {
        for (const auto& s : value) {
            if (!s.is_string())
                fail(where, "word entries must be symbol names");
            out.push_back(s.get<std::string>());
        }
    } else if (value.is_string()) {
        const Alphabet a(alphabet);
        try {
            for (Symbol s : a.parse(value.get<std::string>()))
                out.push_back(a.name(s));
        } catch (const ConfigError& e) {
            fail(where, e.what());
        }
    } else {
        fail(where, "word must be a string or a list of symbol names");
    }
    if (out.empty())
        fail(where, "empty word");
    for (const auto& s : out)
        if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
            fail(where, "unknown symbol '" + s + "'");
    return out;
}

cplx read_complex(const json& value, const std::string& where) {
    if (value.is_number())
        return {value.get<double>(), 0.0};
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
        fail(where, "complex entries are [re, im]");
    return {value[0].get<double>(), value[1].get<double>()};
}

} // namespace

double parse_angle(const json& value, const std::string& where) {
    if (value.is_number())
        return value.get<double>();
    if (value.is_string()) {
        std::string_view text = value.get_ref<const std::string&>();
        double sign = 1.0;
        if (text.starts_with('-')) {
            sign = -1.0;
            text.remove_prefix(1);
        }
        if (text == "pi")
            return sign * pi;
        if (!text.starts_with("pi*"))
            fail(where, "angle strings look like \"pi*<fraction>\"");
        return sign * pi * parse_fraction(text.substr(3), where);
    }
    if (value.is_array()) {
        const cplx z = read_complex(value, where);
        if (std::abs(std::abs(z) - 1.0) > 1e-9)
            fail(where, "complex endpoint is not on the unit circle");
        return std::arg(z);
    }
    fail(where, "angle must be a number, a \"pi*<fraction>\" string or [re, im]");
}

SystemConfig parse_config(const json& doc) {
    SystemConfig cfg;
    if (!doc.is_object())
        fail("/", "system description must be an object");
    cfg.name = doc.value("name", std::string("unnamed"));
    const json& alphabet = member(doc, "alphabet", "/");
    if (!alphabet.is_array() || alphabet.empty())
        fail("/alphabet", "must be a nonempty list");
    for (const auto& s : alphabet) {
        if (!s.is_string())
            fail("/alphabet", "symbol names must be strings");
        cfg.alphabet.push_back(s.get<std::string>());
    }
    try {
        Alphabet check(cfg.alphabet);
    } catch (const ConfigError& e) {
        fail("/alphabet", e.what());
    }

    const json& transforms = member(doc, "transforms", "/");
    const json& cover = member(doc, "cover", "/");
    for (const auto& sym : cfg.alphabet) {
        const std::string tpath = "/transforms/" + sym;
        if (!transforms.is_object() || !transforms.contains(sym))
            fail(tpath, "missing transformation");
        const json& t = transforms.at(sym);
        TransformSource src;
        if (t.is_object() && t.contains("disc")) {
            const json& m = t.at("disc");
            if (!m.is_array() || m.size() != 4)
                fail(tpath + "/disc", "expected four complex entries");
            for (std::size_t i = 0; i < 4; ++i)
                src.disc[i] = read_complex(m[i], tpath + "/disc/" + std::to_string(i));
        } else if (t.is_object() && t.contains("real_line")) {
            const json& m = t.at("real_line");
            if (!m.is_array() || m.size() != 4)
                fail(tpath + "/real_line", "expected [a, b, c, d]");
            src.kind = TransformSource::Kind::real_line;
            for (std::size_t i = 0; i < 4; ++i) {
                if (!m[i].is_number())
                    fail(tpath + "/real_line", "entries must be numbers");
                src.real_line[i] = m[i].get<double>();
            }
        } else {
            fail(tpath, "expected {\"disc\": ...} or {\"real_line\": ...}");
        }
        cfg.transforms.push_back(src);

        const std::string cpath = "/cover/" + sym;
        if (!cover.is_object() || !cover.contains(sym))
            fail(cpath, "missing cover arcs");
        const json& arcs = cover.at(sym);
        if (!arcs.is_array())
            fail(cpath, "expected a list of arcs");
        std::vector<std::pair<double, double>> list;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            const std::string apath = cpath + "/" + std::to_string(i);
            if (!arcs[i].is_array() || arcs[i].size() != 2)
                fail(apath, "an arc is [from, to]");
            list.emplace_back(parse_angle(arcs[i][0], apath + "/0"), parse_angle(arcs[i][1], apath + "/1"));
        }
        cfg.cover.push_back(std::move(list));
    }
    if (doc.contains("forbidden")) {
        const json& forbidden = doc.at("forbidden");
        if (!forbidden.is_array())
            fail("/forbidden", "expected a list of words");
        for (std::size_t i = 0; i < forbidden.size(); ++i)
            cfg.forbidden.push_back(read_word(forbidden[i], cfg.alphabet, "/forbidden/" + std::to_string(i)));
    }
    return cfg;
}

SystemConfig parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
    }
    return parse_config(doc);
}

SystemConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

json to_json(const SystemConfig& cfg) {
    json doc;
    doc["name"] = cfg.name;
    doc["alphabet"] = cfg.alphabet;
    json transforms = json::object();
    json cover = json::object();
    for (std::size_t i = 0; i < cfg.alphabet.size(); ++i) {
        const auto& t = cfg.transforms[i];
        if (t.kind == TransformSource::Kind::disc) {
            json m = json::array();
            for (const auto& z : t.disc)
                m.push_back({z.real(), z.imag()});
            transforms[cfg.alphabet[i]] = {{"disc", m}};
        } else {
            transforms[cfg.alphabet[i]] = {{"real_line", t.real_line}};
        }
        json arcs = json::array();
        for (const auto& [from, to] : cfg.cover[i])
            arcs.push_back({from, to});
        cover[cfg.alphabet[i]] = arcs;
    }
    doc["transforms"] = transforms;
    doc["cover"] = cover;
    doc["forbidden"] = cfg.forbidden;
    return doc;
}

NumberSystemSpec build_spec(const SystemConfig& cfg) {
    NumberSystemSpec spec;
    spec.name = cfg.name;
    try {
        spec.alphabet = Alphabet(cfg.alphabet);
    } catch (const ConfigError& e) {
        fail("/alphabet", e.what());
    }
    if (cfg.transforms.size() != cfg.alphabet.size() || cfg.cover.size() != cfg.alphabet.size())
        fail("/", "transforms and cover must list every symbol");
    for (std::size_t i = 0; i < cfg.alphabet.size(); ++i) {
        const auto& t = cfg.transforms[i];
        try {
            if (t.kind == TransformSource::Kind::disc)
                spec.transforms.push_back(normalize(t.disc));
            else
                spec.transforms.push_back(from_real_line(t.real_line[0], t.real_line[1], t.real_line[2], t.real_line[3]));
        } catch (const Error& e) {
            fail("/transforms/" + cfg.alphabet[i], e.what());
        }
        std::vector<Arc> arcs;
        for (const auto& [from, to] : cfg.cover[i])
            arcs.push_back(Arc::between(CirclePoint(from), CirclePoint(to)));
        spec.cover.push_back(ArcSet::from_arcs(std::move(arcs)));
    }
    std::vector<Word> forbidden;
    for (const auto& w : cfg.forbidden) {
        Word word;
        for (const auto& s : w)
            word.push_back(spec.alphabet.index_of(s));
        forbidden.push_back(std::move(word));
    }
    spec.subshift = Subshift(spec.alphabet, std::move(forbidden));
    spec.validate();
    return spec;
}

SystemConfig export_config(const NumberSystemSpec& spec) {
    SystemConfig cfg;
    cfg.name = spec.name;
    cfg.alphabet = spec.alphabet.names();
    for (const auto& f : spec.transforms) {
        TransformSource t;
        t.disc = f.matrix();
        cfg.transforms.push_back(t);
    }
    for (const auto& w : spec.cover) {
        std::vector<std::pair<double, double>> arcs;
        for (const auto& a : w.arcs())
            arcs.emplace_back(a.start(), a.is_full() ? a.start() : wrap_angle(a.end()));
        cfg.cover.push_back(std::move(arcs));
    }
    for (const auto& w : spec.subshift.forbidden()) {
        std::vector<std::string> names;
        for (Symbol s : w)
            names.push_back(spec.alphabet.name(s));
        cfg.forbidden.push_back(std::move(names));
    }
    return cfg;
}

} // namespace mns
