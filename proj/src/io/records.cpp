// Copyright 2026 The CDPQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cdpq/io/records.hpp"

#include <fstream>
#include <sstream>

#include "cdpq/error.hpp"
#include "cdpq/io/config.hpp"

namespace cdpq {
namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void dump(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

std::string lookup(const Header& h, const std::string& key) {
    for (const auto& [k, v] : h) {
        if (k == key) return v;
    }
    throw Error(ErrorCode::Io, "missing key '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string MatrixText::get(const std::string& key) const { return lookup(header, key); }

std::string render_rows(const Eigen::MatrixXd& data) {
    std::string out;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        for (Eigen::Index j = 0; j < data.cols(); ++j) {
            if (j) out += ' ';
            out += format_double(data(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_matrix(const std::filesystem::path& path, const MatrixText& m) {
    if (!m.columns.empty() && static_cast<Eigen::Index>(m.columns.size()) != m.data.cols()) {
        throw Error(ErrorCode::InvalidDimension, "write_matrix: column names do not match data");
    }
    const std::string rows = render_rows(m.data);
    std::ostringstream os;
    for (const auto& [k, v] : m.header) os << "# " << k << ": " << v << '\n';
    os << "# payload_sha256: " << sha256_hex(rows) << '\n';
    os << "# columns:";
    for (const auto& c : m.columns) os << ' ' << c;
    os << '\n' << rows;
    dump(path, os.str());
}

MatrixText read_matrix(const std::filesystem::path& path) {
    std::istringstream is(slurp(path));
    MatrixText m;
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = line.substr(2, colon - 2);
            const std::string value = trim(line.substr(colon + 1));
            if (key == "columns") {
                std::istringstream cs(value);
                std::string c;
                while (cs >> c) m.columns.push_back(c);
            } else {
                m.header.emplace_back(key, value);
            }
            continue;
        }
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) row.push_back(std::stod(tok));
        rows.push_back(std::move(row));
    }
    const auto cols = rows.empty() ? m.columns.size() : rows.front().size();
    m.data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorCode::Io, "read_matrix: ragged rows in " + path.string());
        for (std::size_t j = 0; j < cols; ++j) {
            m.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

void KeyValueRecord::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries.emplace_back(key, value);
}

void KeyValueRecord::set(const std::string& key, double value) { set(key, format_double(value)); }

std::string KeyValueRecord::get(const std::string& key) const { return lookup(entries, key); }

double KeyValueRecord::number(const std::string& key) const {
    const std::string v = get(key);
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Io, "record: '" + key + "' is not numeric");
    }
}

bool KeyValueRecord::has(const std::string& key) const {
    for (const auto& e : entries) {
        if (e.first == key) return true;
    }
    return false;
}

void write_record(const std::filesystem::path& path, const KeyValueRecord& r) {
    std::string body;
    for (const auto& [k, v] : r.entries) {
        if (k == "payload_sha256") continue;
        body += k + " = " + v + '\n';
    }
    dump(path, body + "payload_sha256 = " + sha256_hex(body) + '\n');
}

KeyValueRecord read_record(const std::filesystem::path& path) {
    std::istringstream is(slurp(path));
    KeyValueRecord r;
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        r.entries.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return r;
}

FileCheck verify_file(const std::filesystem::path& path, const std::string& expected_config_hash) {
    FileCheck out;
    out.path = path;
    const std::string text = slurp(path);
    std::string stored_hash, stored_payload, recomputed;
    if (path.extension() == ".dat") {
        const auto m = read_matrix(path);
        stored_hash = m.get("config_hash");
        stored_payload = m.get("payload_sha256");
        recomputed = sha256_hex(render_rows(m.data));
        // Rendering is canonical, so the file must also match byte for byte.
        const auto pos = text.find("# columns:");
        const auto nl = pos == std::string::npos ? pos : text.find('\n', pos);
        if (nl == std::string::npos || text.substr(nl + 1) != render_rows(m.data)) recomputed = "non-canonical rows";
    } else {
        std::istringstream is(text);
        std::string line, body;
        while (std::getline(is, line)) {
            if (line.rfind("payload_sha256 = ", 0) == 0) {
                stored_payload = line.substr(17);
                continue;
            }
            if (line.rfind("config_hash = ", 0) == 0) stored_hash = line.substr(14);
            body += line + '\n';
        }
        recomputed = sha256_hex(body);
    }
    out.hash_matches = stored_hash == expected_config_hash;
    out.payload_matches = !stored_payload.empty() && stored_payload == recomputed;
    if (!out.hash_matches) out.detail += "config_hash " + stored_hash + " != " + expected_config_hash + "; ";
    if (!out.payload_matches) out.detail += "payload hash mismatch; ";
    return out;
}

}  // namespace cdpq
