#ifndef GRAMLAB_VERSION_HPP
#define GRAMLAB_VERSION_HPP

#define GRAMLAB_VERSION "0.1.0"

#endif
