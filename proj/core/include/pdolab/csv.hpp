#pragma once

#include <string>
#include <vector>

#include "pdolab/common.hpp"

namespace pdolab {

class Grid;
struct GridFunction;
struct KernelMatrix;

/// %.17g — enough digits that parsing the text reproduces the double exactly.
std::string fmt17(double v);

/// Tabular payload with '#'-prefixed provenance lines.  Layout:
///   # pdolab-csv v1
///   # timestamp=<iso8601>          (the one line excluded from determinism checks)
///   # key=value ...                (config echo + summary, sorted as inserted)
///   col1,col2,...
///   cells...                       ('\n' line endings, no trailing separator)
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> meta;  // written as "# k=v"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(const std::string& key, const std::string& value);
    void add_meta(const std::string& key, double value);
    std::string to_string(bool with_timestamp = true) const;
    void write(const std::string& path) const;

    static CsvTable parse(const std::string& text);
    static CsvTable read(const std::string& path);

    int column_index(const std::string& name) const;
    const std::string* find_meta(const std::string& key) const;
};

/// GridFunction serialization: columns index,re,im.
void write_grid_function(const std::string& path, const GridFunction& u);

/// Kernel export: columns row,col,re,im.
void write_kernel(const std::string& path, const KernelMatrix& K);

}  // namespace pdolab
