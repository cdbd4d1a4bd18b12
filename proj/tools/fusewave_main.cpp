#include "fusewave/cli.hpp"

#if defined(__GLIBC__)
#include <malloc.h>
#endif

int main(int argc, char** argv) {
#if defined(__GLIBC__)
    // Every fitness evaluation allocates and frees several image-sized planes;
    // by default each one is a fresh mmap/munmap or heap trim.
    mallopt(M_MMAP_THRESHOLD, 64 << 20);
    mallopt(M_TRIM_THRESHOLD, 128 << 20);
#endif
    return fusewave::cli::run(argc, argv);
}
