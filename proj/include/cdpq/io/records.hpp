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


#ifndef CDPQ_IO_RECORDS_HPP
#define CDPQ_IO_RECORDS_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cdpq {

using Header = std::vector<std::pair<std::string, std::string>>;

/// Header-commented matrix text:
///   # key: value        (one per header entry, then payload_sha256)
///   # columns: a b c
///   <whitespace-separated rows>
/// payload_sha256 covers the row block only.
struct MatrixText {
    Header header;
    std::vector<std::string> columns;
    Eigen::MatrixXd data;

    std::string get(const std::string& key) const;
};

std::string render_rows(const Eigen::MatrixXd& data);
void write_matrix(const std::filesystem::path& path, const MatrixText& m);
MatrixText read_matrix(const std::filesystem::path& path);

/// Flat "key = value" lines. payload_sha256 is appended on write and
/// covers every other line.
struct KeyValueRecord {
    Header entries;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    std::string get(const std::string& key) const;
    double number(const std::string& key) const;
    bool has(const std::string& key) const;
};

void write_record(const std::filesystem::path& path, const KeyValueRecord& r);
KeyValueRecord read_record(const std::filesystem::path& path);

struct FileCheck {
    std::filesystem::path path;
    bool hash_matches = false;     // embedded config_hash equals the expected one
    bool payload_matches = false;  // recomputed payload_sha256 equals the stored one
    std::string detail;
    bool ok() const { return hash_matches && payload_matches; }
};

/// Re-hashes a .dat or .rec file written by this module.
FileCheck verify_file(const std::filesystem::path& path, const std::string& expected_config_hash);

}  // namespace cdpq

#endif  // CDPQ_IO_RECORDS_HPP
