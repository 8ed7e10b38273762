#include "pathreuse/photon_store.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace pathreuse {

uint32_t encode_path_info(const PathInfoFields& f) {
    if (f.cell >= (1u << 22)) throw std::out_of_range("path info: cell id needs 22 bits");
    if (f.seg_count < 1 || f.seg_count > 16)
        throw std::out_of_range("path info: segment count must be in 1..16");
    if (f.retrace_start > 15) throw std::out_of_range("path info: retrace start must be in 0..15");
    uint32_t word = f.cell;
    word |= (f.seg_count - 1) << 22;
    word |= f.retrace_start << 26;
    if (f.replace) word |= 1u << 30;
    if (f.reuse_light) word |= 1u << 31;
    return word;
}

PathInfoFields decode_path_info(uint32_t word) {
    PathInfoFields f;
    f.cell = word & ((1u << 22) - 1);
    f.seg_count = ((word >> 22) & 0xF) + 1;
    f.retrace_start = (word >> 26) & 0xF;
    f.replace = (word >> 30) & 1;
    f.reuse_light = (word >> 31) & 1;
    return f;
}

size_t PhotonMap::flat_index(uint32_t bounce, uint32_t path) const {
    if (bounce >= max_bounces_ || path >= n_paths_)
        throw std::out_of_range("PhotonMap: bounce/path out of range");
    return static_cast<size_t>(bounce) * n_paths_ + path;
}

MemoryFootprint memory_footprint(uint64_t n_paths, uint32_t max_bounces,
                                 const std::vector<uint32_t>& dm_dims, bool area_light) {
    constexpr double kMiB = 1024.0 * 1024.0;
    uint64_t cells = 1;
    for (uint32_t d : dm_dims) cells *= d;

    MemoryFootprint fp;
    fp.path_info = 4.0 * static_cast<double>(n_paths) / kMiB;
    fp.origin_positions = area_light ? 12.0 * static_cast<double>(n_paths) / kMiB : 0.0;
    fp.distribution_maps = 2.0 * 4.0 * static_cast<double>(cells) / kMiB;
    fp.pruned_array = 4.0 * static_cast<double>(n_paths) / kMiB;
    fp.photon_map = 32.0 * static_cast<double>(n_paths) * max_bounces / kMiB;
    fp.subtotal_reuse =
        fp.path_info + fp.origin_positions + fp.distribution_maps + fp.pruned_array;
    fp.total = fp.subtotal_reuse + fp.photon_map;
    return fp;
}

namespace {
constexpr char kMagic[4] = {'P', 'H', 'M', '1'};

void put_u32(std::ostream& out, uint32_t v) {
    const unsigned char bytes[4] = {static_cast<unsigned char>(v & 0xFF),
                                    static_cast<unsigned char>((v >> 8) & 0xFF),
                                    static_cast<unsigned char>((v >> 16) & 0xFF),
                                    static_cast<unsigned char>((v >> 24) & 0xFF)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

uint32_t get_u32(std::istream& in) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    return static_cast<uint32_t>(bytes[0]) | (static_cast<uint32_t>(bytes[1]) << 8) |
           (static_cast<uint32_t>(bytes[2]) << 16) | (static_cast<uint32_t>(bytes[3]) << 24);
}
}  // namespace

void write_photon_dump(const PhotonMap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open photon dump for writing: " + path);
    out.write(kMagic, 4);
    put_u32(out, map.n_paths());
    put_u32(out, map.max_bounces());
    put_u32(out, 0);  // reserved
    out.write(reinterpret_cast<const char*>(map.records().data()),
              static_cast<std::streamsize>(map.records().size() * sizeof(Photon)));
    if (!out) throw std::runtime_error("failed writing photon dump: " + path);
}

PhotonMap read_photon_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open photon dump: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("bad photon dump magic: " + path);
    const uint32_t n_paths = get_u32(in);
    const uint32_t max_bounces = get_u32(in);
    get_u32(in);  // reserved
    PhotonMap map(n_paths, max_bounces);
    in.read(reinterpret_cast<char*>(map.records().data()),
            static_cast<std::streamsize>(map.records().size() * sizeof(Photon)));
    if (!in) throw std::runtime_error("truncated photon dump: " + path);
    return map;
}

}  // namespace pathreuse
