#include "sagecut/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sagecut {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("truncated binary matrix header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

std::pair<Graph, ValidationReport> load_graph(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::vector<Edge> edges;
    NodeId max_id = -1;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) parse_fail(path, line_no, "expected two integer tokens");
        std::string trailing;
        if (ls >> trailing) parse_fail(path, line_no, "unexpected trailing token '" + trailing + "'");
        if (u < 0 || v < 0) parse_fail(path, line_no, "negative node id");
        max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
        edges.push_back(Edge{static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }

    NodeId num_nodes = options.num_nodes.value_or(max_id + 1);
    if (max_id >= num_nodes)
        throw std::runtime_error(path + ": node id " + std::to_string(max_id) +
                                 " exceeds declared node count " + std::to_string(num_nodes));

    auto [g, report] = build_graph(num_nodes, std::move(edges));
    if (options.strict && !report.isolated_nodes.empty())
        throw std::runtime_error(path + ": " + std::to_string(report.isolated_nodes.size()) +
                                 " node id(s) absent from the edge list (strict mode)");
    return {std::move(g), std::move(report)};
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const Edge& e : g.edges) out << e.u << ' ' << e.v << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

Eigen::MatrixXd load_features(const std::string& path, NodeId expected_nodes) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open features: " + path);
    char magic[4] = {0, 0, 0, 0};
    probe.read(magic, 4);
    const bool binary = probe.gcount() == 4 && std::memcmp(magic, "CFM1", 4) == 0;
    probe.close();

    if (binary) {
        std::ifstream in(path, std::ios::binary);
        in.seekg(4);
        const std::uint64_t rows = read_u64_le(in);
        const std::uint64_t cols = read_u64_le(in);
        if (rows != static_cast<std::uint64_t>(expected_nodes))
            throw std::runtime_error(path + ": feature rows " + std::to_string(rows) +
                                     " != expected node count " + std::to_string(expected_nodes));
        Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        std::vector<float> row(cols);
        for (std::uint64_t r = 0; r < rows; ++r) {
            in.read(reinterpret_cast<char*>(row.data()),
                    static_cast<std::streamsize>(cols * sizeof(float)));
            if (!in) throw std::runtime_error(path + ": truncated feature data");
            for (std::uint64_t c = 0; c < cols; ++c) {
                if (!std::isfinite(row[c]))
                    throw std::runtime_error(path + ": non-finite value at row " +
                                             std::to_string(r) + ", col " + std::to_string(c));
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
            }
        }
        return m;
    }

    std::ifstream in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            std::string tok = line.substr(pos, comma - pos);
            double value = 0.0;
            try {
                std::size_t used = 0;
                value = std::stod(tok, &used);
                while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
                    ++used;
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                parse_fail(path, line_no, "bad numeric token '" + tok + "'");
            }
            if (!std::isfinite(value))
                throw std::runtime_error(path + ": non-finite value at row " +
                                         std::to_string(rows.size()) + ", col " +
                                         std::to_string(row.size()));
            row.push_back(value);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            parse_fail(path, line_no, "ragged row: " + std::to_string(row.size()) +
                                          " columns, expected " +
                                          std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.size() != static_cast<std::size_t>(expected_nodes))
        throw std::runtime_error(path + ": feature rows " + std::to_string(rows.size()) +
                                 " != expected node count " + std::to_string(expected_nodes));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return m;
}

void save_features_csv(const Eigen::MatrixXd& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << fmt_double(m(r, c));
        }
        out << '\n';
    }
}

void save_features_binary(const Eigen::MatrixXd& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write("CFM1", 4);
    write_u64_le(out, static_cast<std::uint64_t>(m.rows()));
    write_u64_le(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const float f = static_cast<float>(m(r, c));
            out.write(reinterpret_cast<const char*>(&f), sizeof(float));
        }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void load_labels(const std::string& path, Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labels: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    if (lines.size() != static_cast<std::size_t>(g.num_nodes))
        throw std::runtime_error(path + ": " + std::to_string(lines.size()) +
                                 " label lines for " + std::to_string(g.num_nodes) + " nodes");
    const bool multilabel = !lines.empty() && lines.front().find(',') != std::string::npos;
    if (multilabel) {
        std::size_t width = 0;
        for (std::size_t r = 0; r < lines.size(); ++r) {
            std::vector<double> row;
            std::istringstream ls(lines[r]);
            std::string tok;
            while (std::getline(ls, tok, ',')) {
                if (tok != "0" && tok != "1")
                    throw std::runtime_error(path + ": multi-label entries must be 0 or 1, got '" +
                                             tok + "'");
                row.push_back(tok == "1" ? 1.0 : 0.0);
            }
            if (r == 0) {
                width = row.size();
                g.multilabels.resize(g.num_nodes, static_cast<Eigen::Index>(width));
            } else if (row.size() != width) {
                throw std::runtime_error(path + ": ragged multi-label row " + std::to_string(r));
            }
            for (std::size_t c = 0; c < width; ++c)
                g.multilabels(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
        }
        g.num_classes = static_cast<int>(width);
        g.labels.clear();
    } else {
        g.labels.resize(lines.size());
        NodeId max_label = 0;
        for (std::size_t r = 0; r < lines.size(); ++r) {
            long long value;
            std::istringstream ls(lines[r]);
            if (!(ls >> value) || value < 0)
                throw std::runtime_error(path + ": bad class id on line " + std::to_string(r + 1));
            g.labels[r] = static_cast<NodeId>(value);
            max_label = std::max(max_label, g.labels[r]);
        }
        g.num_classes = max_label + 1;
        g.multilabels.resize(0, 0);
    }
}

void save_labels(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    if (g.is_multilabel()) {
        for (Eigen::Index r = 0; r < g.multilabels.rows(); ++r) {
            for (Eigen::Index c = 0; c < g.multilabels.cols(); ++c) {
                if (c) out << ',';
                out << (g.multilabels(r, c) != 0.0 ? '1' : '0');
            }
            out << '\n';
        }
    } else {
        for (const NodeId label : g.labels) out << label << '\n';
    }
}

void load_masks(const std::string& path, Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open masks: " + path);
    g.train_mask.assign(static_cast<std::size_t>(g.num_nodes), 0);
    g.val_mask.assign(static_cast<std::size_t>(g.num_nodes), 0);
    g.test_mask.assign(static_cast<std::size_t>(g.num_nodes), 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        long long id;
        if (!(ls >> tag >> id)) parse_fail(path, line_no, "expected '<split> <node_id>'");
        if (id < 0 || id >= g.num_nodes) parse_fail(path, line_no, "node id out of range");
        const auto idx = static_cast<std::size_t>(id);
        if (g.train_mask[idx] || g.val_mask[idx] || g.test_mask[idx])
            parse_fail(path, line_no, "node " + std::to_string(id) + " assigned to two splits");
        if (tag == "train")
            g.train_mask[idx] = 1;
        else if (tag == "val")
            g.val_mask[idx] = 1;
        else if (tag == "test")
            g.test_mask[idx] = 1;
        else
            parse_fail(path, line_no, "unknown split tag '" + tag + "'");
    }
}

void save_masks(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const auto dump = [&](const char* tag, const std::vector<std::uint8_t>& mask) {
        for (std::size_t v = 0; v < mask.size(); ++v)
            if (mask[v]) out << tag << ' ' << v << '\n';
    };
    dump("train", g.train_mask);
    dump("val", g.val_mask);
    dump("test", g.test_mask);
}

}  // namespace sagecut
