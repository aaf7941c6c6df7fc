// loader build 4694
var stage = "\x76\x61\x72\x20\x74\x30\x20\x3d\x20\x36\x37\x34\x3b\x20\x76\x61\x72\x20\x74\x31\x20\x3d\x20\x39\x36\x35\x3b\x20\x76\x61\x72\x20\x74\x32\x20\x3d\x20\x32\x37\x30\x3b\x20\x76\x61\x72\x20\x6d\x61\x72\x6b\x20\x3d\x20\x22\x62\x63\x30\x64\x31\x33\x62\x31\x39\x30\x62\x66\x30\x34\x30\x34\x66\x65\x66\x65\x32\x62\x37\x35\x34\x65\x65\x30\x34\x39\x32\x31\x33\x62\x63\x39\x37\x37\x30\x37\x31\x33\x61\x39\x61\x63\x66\x62\x22\x3b\x20\x77\x68\x69\x6c\x65\x20\x28\x74\x30\x2d\x2d\x20\x3e\x20\x30\x29\x20\x7b\x20\x74\x31\x20\x2b\x3d\x20\x74\x30\x20\x2a\x20\x35\x3b\x20\x7d\x20\x64\x6f\x63\x75\x6d\x65\x6e\x74\x2e\x74\x69\x74\x6c\x65\x20\x3d\x20\x6d\x61\x72\x6b\x2e\x73\x6c\x69\x63\x65\x28\x30\x2c\x20\x38\x29\x3b";
eval(stage);
