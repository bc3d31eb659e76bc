#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "ccopt/harness.hpp"

namespace ccopt {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

std::string double_to_string(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::string path_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string name = (slash == std::string::npos) ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

long parse_long(const std::string& tok, std::size_t line_no, const std::string& path) {
    long value = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw IoError(path + ":" + std::to_string(line_no) + ": expected integer, got '" +
                      tok + "'");
    }
    return value;
}

double parse_double(const std::string& tok, std::size_t line_no, const std::string& path) {
    try {
        std::size_t used = 0;
        const double value = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(line_no) + ": expected number, got '" +
                      tok + "'");
    }
}

struct RawEdges {
    std::vector<std::pair<long, long>> pairs;
    long header_n = -1;
};

// Builds a simple 0-based graph from raw index pairs: drops self-loops and
// duplicates, shifts 1-based files down by one.
LoadedGraph simplify(const RawEdges& raw, const std::string& path) {
    if (raw.pairs.empty()) throw DomainError(path + ": graph has no edges");
    long min_idx = raw.pairs.front().first;
    long max_idx = raw.pairs.front().first;
    for (const auto& [a, b] : raw.pairs) {
        min_idx = std::min({min_idx, a, b});
        max_idx = std::max({max_idx, a, b});
    }
    const long shift = (min_idx >= 1) ? 1 : 0;
    if (min_idx - shift < 0) throw IoError(path + ": negative vertex index");

    LoadedGraph out;
    long n = max_idx - shift + 1;
    if (raw.header_n > 0) n = std::max(n, raw.header_n);
    std::set<std::pair<long, long>> seen;
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : raw.pairs) {
        const long u = a - shift;
        const long v = b - shift;
        if (u == v) {
            ++out.dropped_loops;
            continue;
        }
        const auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            ++out.dropped_duplicates;
            continue;
        }
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (edges.empty()) throw DomainError(path + ": graph has no usable edges");
    out.skeleton.n_vertices = static_cast<int>(n);
    out.skeleton.edges.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        out.skeleton.edges.push_back({u, v, StochItem{1.0, 1.0}});
    }
    out.skeleton.finalize();
    return out;
}

LoadedGraph load_edge_list(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    RawEdges raw;
    std::vector<std::pair<std::size_t, std::pair<long, long>>> data;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#' || toks[0][0] == '%') continue;
        if (toks.size() != 2) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": expected two integers per edge line");
        }
        data.push_back({line_no, {parse_long(toks[0], line_no, path),
                                  parse_long(toks[1], line_no, path)}});
    }
    if (data.empty()) throw DomainError(path + ": graph has no edges");
    // A leading "n m" header is recognized by its edge count matching the
    // number of remaining lines.
    std::size_t start = 0;
    if (data.size() >= 2 &&
        data[0].second.second == static_cast<long>(data.size()) - 1) {
        raw.header_n = data[0].second.first;
        start = 1;
    }
    for (std::size_t i = start; i < data.size(); ++i) raw.pairs.push_back(data[i].second);
    return simplify(raw, path);
}

LoadedGraph load_matrix_market(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    RawEdges raw;
    bool dims_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '%') continue;
        if (!dims_seen) {
            if (toks.size() < 3) {
                throw IoError(path + ":" + std::to_string(line_no) +
                              ": expected 'rows cols nnz' size line");
            }
            raw.header_n = std::max(parse_long(toks[0], line_no, path),
                                    parse_long(toks[1], line_no, path));
            dims_seen = true;
            continue;
        }
        if (toks.size() < 2) {
            throw IoError(path + ":" + std::to_string(line_no) + ": expected edge entry");
        }
        raw.pairs.emplace_back(parse_long(toks[0], line_no, path),
                               parse_long(toks[1], line_no, path));
    }
    if (!dims_seen || raw.pairs.empty()) throw DomainError(path + ": graph has no edges");
    return simplify(raw, path);
}

}  // namespace

GraphFormat guess_graph_format(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == "mtx" || ext == "mm") return GraphFormat::matrix_market;
    }
    return GraphFormat::edge_list;
}

LoadedGraph load_graph(const std::string& path, GraphFormat format) {
    return format == GraphFormat::edge_list ? load_edge_list(path)
                                            : load_matrix_market(path);
}

Instance load_instance(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    std::string type;
    long n_items = -1;
    long k = -1;
    long vertices = -1;
    std::vector<StochItem> items;
    std::vector<GraphInstance::Edge> weighted_edges;
    std::vector<std::pair<int, int>> plain_edges;
    std::vector<StochItem> nodes;

    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        const std::string& key = toks[0];
        const auto need = [&](std::size_t count) {
            if (toks.size() != count + 1) {
                throw IoError(path + ":" + std::to_string(line_no) + ": '" + key +
                              "' expects " + std::to_string(count) + " value(s)");
            }
        };
        if (key == "type") {
            need(1);
            type = toks[1];
        } else if (key == "n") {
            need(1);
            n_items = parse_long(toks[1], line_no, path);
        } else if (key == "k") {
            need(1);
            k = parse_long(toks[1], line_no, path);
        } else if (key == "vertices") {
            need(1);
            vertices = parse_long(toks[1], line_no, path);
        } else if (key == "item") {
            need(2);
            items.push_back({parse_double(toks[1], line_no, path),
                             parse_double(toks[2], line_no, path)});
        } else if (key == "node") {
            need(2);
            nodes.push_back({parse_double(toks[1], line_no, path),
                             parse_double(toks[2], line_no, path)});
        } else if (key == "edge") {
            if (toks.size() == 3) {
                plain_edges.emplace_back(
                    static_cast<int>(parse_long(toks[1], line_no, path)),
                    static_cast<int>(parse_long(toks[2], line_no, path)));
            } else if (toks.size() == 5) {
                weighted_edges.push_back(
                    {static_cast<int>(parse_long(toks[1], line_no, path)),
                     static_cast<int>(parse_long(toks[2], line_no, path)),
                     StochItem{parse_double(toks[3], line_no, path),
                               parse_double(toks[4], line_no, path)}});
            } else {
                throw IoError(path + ":" + std::to_string(line_no) +
                              ": 'edge' expects 'u v' or 'u v mu var'");
            }
        } else {
            throw IoError(path + ":" + std::to_string(line_no) + ": unknown key '" + key +
                          "'");
        }
    }

    Instance inst;
    inst.label = path_stem(path);
    if (type == "uniform") {
        if (n_items >= 0 && n_items != static_cast<long>(items.size())) {
            throw IoError(path + ": 'n' does not match the number of item lines");
        }
        if (k < 1) throw IoError(path + ": uniform instance requires 'k'");
        inst.kind = Instance::Kind::uniform;
        inst.uniform = UniformInstance(std::move(items), static_cast<std::size_t>(k));
        return inst;
    }
    if (type == "mst") {
        if (vertices < 1) throw IoError(path + ": mst instance requires 'vertices'");
        inst.kind = Instance::Kind::mst;
        inst.graph = make_mst_instance(static_cast<int>(vertices), std::move(weighted_edges));
        return inst;
    }
    if (type == "domset") {
        if (vertices < 1) throw IoError(path + ": domset instance requires 'vertices'");
        inst.kind = Instance::Kind::domset;
        inst.graph = make_domset_instance(static_cast<int>(vertices), std::move(plain_edges),
                                          std::move(nodes));
        return inst;
    }
    throw IoError(path + ": missing or unknown 'type' (uniform|mst|domset)");
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ostringstream out;
    switch (inst.kind) {
        case Instance::Kind::uniform:
            out << "type uniform\n";
            out << "n " << inst.uniform.n() << "\n";
            out << "k " << inst.uniform.k << "\n";
            for (const auto& it : inst.uniform.items) {
                out << "item " << double_to_string(it.mu) << " " << double_to_string(it.var)
                    << "\n";
            }
            break;
        case Instance::Kind::mst:
            out << "type mst\n";
            out << "vertices " << inst.graph.n_vertices << "\n";
            for (const auto& e : inst.graph.edges) {
                out << "edge " << e.u << " " << e.v << " " << double_to_string(e.w.mu) << " "
                    << double_to_string(e.w.var) << "\n";
            }
            break;
        case Instance::Kind::domset:
            out << "type domset\n";
            out << "vertices " << inst.graph.n_vertices << "\n";
            for (const auto& w : inst.graph.node_weights) {
                out << "node " << double_to_string(w.mu) << " " << double_to_string(w.var)
                    << "\n";
            }
            for (const auto& e : inst.graph.edges) {
                out << "edge " << e.u << " " << e.v << "\n";
            }
            break;
    }
    write_text_file(path, out.str());
}

}  // namespace ccopt
