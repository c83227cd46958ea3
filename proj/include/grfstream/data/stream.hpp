#pragma once

// Stream sources: single-consumer iterators over labelled samples.

#include <cstddef>
#include <optional>
#include <vector>

#include "grfstream/sample.hpp"

namespace grfstream {

class StreamSource {
public:
    virtual ~StreamSource() = default;

    /// Fills `out` with the next sample; false at end of stream.
    virtual bool next(Sample& out) = 0;

    virtual std::size_t dim() const = 0;

    /// Total length when known up front (synthetic streams); files report it
    /// only once exhausted.
    virtual std::optional<std::size_t> length() const = 0;

    /// Distinct class ids seen so far (fixed for synthetic streams).
    virtual int num_classes() const = 0;
};

struct MaterializedStream {
    std::vector<Sample> samples;
    std::size_t dim = 0;
    int num_classes = 0;
};

inline MaterializedStream materialize(StreamSource& source) {
    MaterializedStream out;
    if (auto n = source.length()) out.samples.reserve(*n);
    Sample s;
    while (source.next(s)) out.samples.push_back(s);
    out.dim = source.dim();
    out.num_classes = source.num_classes();
    return out;
}

} // namespace grfstream
