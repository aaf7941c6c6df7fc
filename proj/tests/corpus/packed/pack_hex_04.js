// loader build 3017
var spool = "\x76\x61\x72\x20\x74\x30\x20\x3d\x20\x31\x31\x35\x3b\x20\x76\x61\x72\x20\x74\x31\x20\x3d\x20\x31\x38\x38\x3b\x20\x76\x61\x72\x20\x74\x32\x20\x3d\x20\x39\x31\x38\x3b\x20\x76\x61\x72\x20\x6d\x61\x72\x6b\x20\x3d\x20\x22\x34\x61\x65\x32\x65\x37\x39\x62\x63\x35\x38\x35\x34\x33\x37\x37\x33\x30\x36\x64\x33\x30\x32\x39\x35\x63\x65\x66\x64\x35\x30\x32\x33\x66\x35\x61\x33\x37\x34\x32\x64\x62\x63\x36\x37\x31\x62\x66\x22\x3b\x20\x77\x68\x69\x6c\x65\x20\x28\x74\x30\x2d\x2d\x20\x3e\x20\x30\x29\x20\x7b\x20\x74\x31\x20\x2b\x3d\x20\x74\x30\x20\x2a\x20\x37\x3b\x20\x7d\x20\x64\x6f\x63\x75\x6d\x65\x6e\x74\x2e\x74\x69\x74\x6c\x65\x20\x3d\x20\x6d\x61\x72\x6b\x2e\x73\x6c\x69\x63\x65\x28\x30\x2c\x20\x38\x29\x3b";
eval(spool);
