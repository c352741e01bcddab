#include "strata/textio.hpp"

#include <algorithm>
#include <sstream>

namespace strata {

namespace {

struct Token {
    std::string text;  // raw text, quotes and escapes still in place
    int col = 0;
};

// Splits one line into whitespace-separated tokens. A double quote opens a
// quoted span inside the current token (for desc="two words"); backslash
// escapes \" and \\ inside quotes. '#' outside quotes starts a comment.
std::vector<Token> tokenize(const std::string& line, int lineno) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        Token t;
        t.col = static_cast<int>(i) + 1;
        bool quoted = false;
        while (i < line.size()) {
            char c = line[i];
            if (!quoted && (c == ' ' || c == '\t')) break;
            if (!quoted && c == '#') break;
            if (c == '"') quoted = !quoted;
            if (quoted && c == '\\') {
                if (i + 1 >= line.size()) throw ParseError(lineno, t.col, "dangling escape");
                t.text += c;
                t.text += line[i + 1];
                i += 2;
                continue;
            }
            t.text += c;
            ++i;
        }
        if (quoted) throw ParseError(lineno, t.col, "unterminated string");
        tokens.push_back(std::move(t));
    }
    return tokens;
}

std::string unquote(const std::string& raw, int lineno, int col) {
    if (raw.empty() || raw.front() != '"') return raw;
    if (raw.size() < 2 || raw.back() != '"') throw ParseError(lineno, col, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 2 < raw.size()) {
            ++i;
            out += raw[i];
        } else {
            out += raw[i];
        }
    }
    return out;
}

std::set<std::string> split_tags(const std::string& value) {
    std::set<std::string> tags;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            if (!cur.empty()) tags.insert(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tags.insert(cur);
    return tags;
}

struct Attr {
    std::string key;
    std::string value;
    int col = 0;
};

struct DirectiveArgs {
    std::vector<Token> positional;
    std::vector<Attr> attrs;
};

DirectiveArgs split_args(const std::vector<Token>& tokens, std::size_t first, int lineno) {
    DirectiveArgs args;
    for (std::size_t i = first; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        std::size_t eq = std::string::npos;
        bool quoted = false;
        for (std::size_t k = 0; k < t.text.size(); ++k) {
            if (t.text[k] == '"') quoted = !quoted;
            if (!quoted && t.text[k] == '=') {
                eq = k;
                break;
            }
        }
        if (eq == std::string::npos) {
            if (!args.attrs.empty()) {
                throw ParseError(lineno, t.col, "positional argument after attributes");
            }
            args.positional.push_back(t);
        } else {
            Attr a;
            a.key = t.text.substr(0, eq);
            a.value = unquote(t.text.substr(eq + 1), lineno, t.col);
            a.col = t.col;
            args.attrs.push_back(std::move(a));
        }
    }
    return args;
}

Layer parse_layer_or_throw(const Token& t, int lineno) {
    auto layer = parse_layer_name(t.text);
    if (!layer) throw ParseError(lineno, t.col, "unknown layer \"" + t.text + "\"");
    return *layer;
}

int parse_positive_int(const Attr& a, int lineno) {
    try {
        std::size_t used = 0;
        int value = std::stoi(a.value, &used);
        if (used != a.value.size() || value < 1) throw std::invalid_argument("range");
        return value;
    } catch (const std::exception&) {
        throw ParseError(lineno, a.col,
                         "attribute " + a.key + " expects a positive integer, got \"" + a.value +
                             "\"");
    }
}

}  // namespace

ParseResult parse_model(std::string_view text) {
    std::string name = "unnamed";
    bool saw_header = false;
    std::vector<Component> components;
    std::vector<Link> links;
    std::vector<Projection> projections;
    std::vector<Requirement> requirements;
    // Source line of each parsed element, per kind, for error annotation.
    int header_line = 0;
    std::vector<int> component_lines, link_lines, projection_lines, requirement_lines;
    std::vector<ParseWarning> warnings;

    std::istringstream input{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(input, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<Token> tokens = tokenize(line, lineno);
        if (tokens.empty()) continue;
        const std::string& verb = tokens[0].text;

        auto need = [&](const DirectiveArgs& args, std::size_t count, const char* what) {
            if (args.positional.size() != count) {
                throw ParseError(lineno, tokens[0].col,
                                 std::string(verb) + " expects " + what);
            }
        };
        auto warn_unknown = [&](const Attr& a) {
            warnings.push_back({lineno, a.col, "unknown attribute \"" + a.key + "\""});
        };

        if (verb == "model") {
            DirectiveArgs args = split_args(tokens, 1, lineno);
            need(args, 1, "a single name");
            if (saw_header) throw ParseError(lineno, tokens[0].col, "duplicate model directive");
            for (const Attr& a : args.attrs) warn_unknown(a);
            saw_header = true;
            name = args.positional[0].text;
            header_line = lineno;
        } else if (verb == "component") {
            DirectiveArgs args = split_args(tokens, 1, lineno);
            need(args, 2, "<layer> <id>");
            Component c;
            c.layer = parse_layer_or_throw(args.positional[0], lineno);
            c.id = args.positional[1].text;
            for (const Attr& a : args.attrs) {
                if (a.key == "protocols") {
                    c.protocols = split_tags(a.value);
                } else if (a.key == "standards") {
                    c.standards = split_tags(a.value);
                } else if (a.key == "location") {
                    c.location = a.value;
                } else if (a.key == "desc") {
                    c.description = a.value;
                } else {
                    warn_unknown(a);
                }
            }
            components.push_back(std::move(c));
            component_lines.push_back(lineno);
        } else if (verb == "link") {
            DirectiveArgs args = split_args(tokens, 1, lineno);
            need(args, 3, "<layer> <idA> <idB>");
            Link l;
            l.layer = parse_layer_or_throw(args.positional[0], lineno);
            l.a = args.positional[1].text;
            l.b = args.positional[2].text;
            for (const Attr& a : args.attrs) {
                if (a.key == "protocols") {
                    l.protocols = split_tags(a.value);
                } else {
                    warn_unknown(a);
                }
            }
            links.push_back(std::move(l));
            link_lines.push_back(lineno);
        } else if (verb == "map") {
            DirectiveArgs args = split_args(tokens, 1, lineno);
            need(args, 2, "<upperId> <lowerId>");
            for (const Attr& a : args.attrs) warn_unknown(a);
            projections.push_back({args.positional[0].text, args.positional[1].text});
            projection_lines.push_back(lineno);
        } else if (verb == "requirement") {
            DirectiveArgs args = split_args(tokens, 1, lineno);
            need(args, 3, "<id> <srcId> <dstId>");
            Requirement r;
            r.id = args.positional[0].text;
            r.src = args.positional[1].text;
            r.dst = args.positional[2].text;
            for (const Attr& a : args.attrs) {
                if (a.key == "layer") {
                    auto layer = parse_layer_name(a.value);
                    if (!layer) throw ParseError(lineno, a.col, "unknown layer \"" + a.value + "\"");
                    r.layer = *layer;
                } else if (a.key == "min_replicas") {
                    r.min_replicas = parse_positive_int(a, lineno);
                } else if (a.key == "min_locations") {
                    r.min_locations = parse_positive_int(a, lineno);
                } else {
                    warn_unknown(a);
                }
            }
            requirements.push_back(std::move(r));
            requirement_lines.push_back(lineno);
        } else {
            throw ParseError(lineno, tokens[0].col, "unknown directive \"" + verb + "\"");
        }
    }

    try {
        ParseResult result{build_model(std::move(name), std::move(components), std::move(links),
                                       std::move(projections), std::move(requirements)),
                           std::move(warnings)};
        return result;
    } catch (const BuildError& e) {
        int at = 0;
        switch (e.kind()) {
            case BuildError::Kind::Component: at = component_lines[e.index()]; break;
            case BuildError::Kind::Link: at = link_lines[e.index()]; break;
            case BuildError::Kind::Projection: at = projection_lines[e.index()]; break;
            case BuildError::Kind::Requirement: at = requirement_lines[e.index()]; break;
            case BuildError::Kind::Model: at = header_line; break;
        }
        throw ParseError(at, 1, e.what(), e.code());
    }
}

namespace {

std::string quote_description(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void append_tags(std::ostringstream& out, const char* key, const std::set<std::string>& tags) {
    if (tags.empty()) return;
    out << ' ' << key << '=';
    bool first = true;
    for (const std::string& tag : tags) {
        if (!first) out << ',';
        out << tag;
        first = false;
    }
}

}  // namespace

std::string serialize_model(const LayeredModel& model) {
    std::ostringstream out;
    out << "model " << model.name() << "\n";
    for (const Component& c : model.components()) {
        out << "component " << layer_name(c.layer) << ' ' << c.id;
        append_tags(out, "protocols", c.protocols);
        append_tags(out, "standards", c.standards);
        if (!c.location.empty()) out << " location=" << c.location;
        if (!c.description.empty()) out << " desc=" << quote_description(c.description);
        out << "\n";
    }
    for (const Link& l : model.links()) {
        out << "link " << layer_name(l.layer) << ' ' << l.a << ' ' << l.b;
        append_tags(out, "protocols", l.protocols);
        out << "\n";
    }
    for (const Projection& p : model.projections()) {
        out << "map " << p.upper << ' ' << p.lower << "\n";
    }
    for (const Requirement& r : model.requirements()) {
        out << "requirement " << r.id << ' ' << r.src << ' ' << r.dst;
        if (r.layer != Layer::Functional) out << " layer=" << layer_name(r.layer);
        if (r.min_replicas) out << " min_replicas=" << *r.min_replicas;
        if (r.min_locations) out << " min_locations=" << *r.min_locations;
        out << "\n";
    }
    return out.str();
}

}  // namespace strata
